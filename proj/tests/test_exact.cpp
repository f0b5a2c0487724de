// Exact arithmetic layer: extended rationals, parameter model, the critical
// exponent, and the rule table.

#include "morrey/gamma.hpp"
#include "morrey/rational.hpp"
#include "morrey/rules.hpp"
#include "morrey/spaces.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace morrey;

TEST_CASE("rational parsing and printing round trip") {
    CHECK(ExtRational::parse("3/4").str() == "3/4");
    CHECK(ExtRational::parse("-7/2").str() == "-7/2");
    CHECK(ExtRational::parse("5").str() == "5");
    CHECK(ExtRational::parse("inf").is_inf());
    CHECK(ExtRational::parse("4/8") == ExtRational(1, 2));
    CHECK_THROWS_AS(ExtRational::parse("1/0"), std::domain_error);
    CHECK_THROWS_AS(ExtRational::parse("x"), std::domain_error);
}

TEST_CASE("reciprocal conventions on (0, inf]") {
    CHECK(ExtRational::infinity().reciprocal() == ExtRational(0));
    CHECK(ExtRational(0).reciprocal().is_inf());
    CHECK(ExtRational(2).reciprocal() == ExtRational(1, 2));
    // involution on the positive closed ray
    for (const auto& v : {ExtRational(1, 3), ExtRational(2), ExtRational::infinity()})
        CHECK(v.reciprocal().reciprocal() == v);
}

TEST_CASE("infinity arithmetic guards") {
    ExtRational inf = ExtRational::infinity();
    CHECK((inf + ExtRational(5)).is_inf());
    CHECK((inf * ExtRational(2)).is_inf());
    CHECK_THROWS_AS(inf * ExtRational(0), std::domain_error);
    CHECK_THROWS_AS(inf - inf, std::domain_error);
    CHECK_THROWS_AS(inf / inf, std::domain_error);
    CHECK(ExtRational(3) / inf == ExtRational(0));
    CHECK(inf > ExtRational(1000000));
    CHECK(min(inf, ExtRational(7)) == ExtRational(7));
    CHECK(positive_part(ExtRational(-3)) == ExtRational(0));
    CHECK(positive_part(inf).is_inf());
}

TEST_CASE("rational to_double") {
    CHECK(ExtRational(1, 2).to_double() == 0.5);
    CHECK(ExtRational(-3, 4).to_double() == -0.75);
    CHECK(ExtRational::infinity().to_double() == HUGE_VAL);
}

TEST_CASE("parameter validation") {
    SpaceParams sp{Scale::B, 0, 2, 2, ExtRational(1, 4), 1, Setting::Domain};
    CHECK_NOTHROW(sp.validate());
    sp.tau = ExtRational(-1, 4);
    CHECK_THROWS_AS(sp.validate(), std::invalid_argument);
    sp.tau = 0;
    sp.scale = Scale::F;
    sp.p = ExtRational::infinity();
    CHECK_THROWS_AS(sp.validate(), std::invalid_argument);
}

TEST_CASE("region classification against the integrability threshold") {
    auto mk = [](const ExtRational& p, const ExtRational& tau, const ExtRational& q) {
        return SpaceParams{Scale::B, 0, p, q, tau, 1, Setting::Domain};
    };
    CHECK(region_of(mk(2, ExtRational(1), 2)) == RegionTag::Large);
    CHECK(region_of(mk(2, ExtRational(1, 2), ExtRational::infinity())) == RegionTag::Large);
    CHECK(region_of(mk(2, ExtRational(1, 2), 2)) == RegionTag::Boundary);
    CHECK(region_of(mk(2, ExtRational(1, 4), 2)) == RegionTag::Interior);
    CHECK(region_of(mk(ExtRational::infinity(), 0, 2)) == RegionTag::Boundary);
    CHECK(region_of(mk(ExtRational::infinity(), 0, ExtRational::infinity())) == RegionTag::Large);
    CHECK(region_of(mk(ExtRational::infinity(), ExtRational(1, 8), 2)) == RegionTag::Large);
}

TEST_CASE("coincidence normalization") {
    SECTION("large region collapses to the uniform form") {
        SpaceParams sp{Scale::B, ExtRational(1, 2), 2, 3, ExtRational(1), 2, Setting::Domain};
        auto chain = normalize_coincidence(sp);
        REQUIRE(chain.size() >= 2);
        const SpaceParams& last = chain.back();
        CHECK(last.scale == Scale::B);
        CHECK(last.p.is_inf());
        CHECK(last.q.is_inf());
        CHECK(last.tau == ExtRational(0));
        // s + d(tau - 1/p) = 1/2 + 2(1 - 1/2) = 3/2
        CHECK(last.s == ExtRational(3, 2));
        CHECK(region_of(last) == RegionTag::Large);
        // idempotence
        auto again = normalize_coincidence(last);
        CHECK(again.size() == 1);
        CHECK(again.back() == last);
    }
    SECTION("F boundary alias lands on the B scale") {
        SpaceParams sp{Scale::F, ExtRational(1), 2, 3, ExtRational(1, 2), 1, Setting::Domain};
        auto chain = normalize_coincidence(sp);
        REQUIRE(chain.size() == 2);
        const SpaceParams& alias = chain.back();
        CHECK(alias.scale == Scale::B);
        CHECK(alias.p == ExtRational(3));
        CHECK(alias.q == ExtRational(3));
        CHECK(alias.tau == ExtRational(1, 3));
        CHECK(alias.s == sp.s);
    }
    SECTION("interior points are fixed") {
        SpaceParams sp{Scale::B, 0, 2, 2, ExtRational(1, 4), 1, Setting::Domain};
        CHECK(normalize_coincidence(sp).size() == 1);
    }
}

TEST_CASE("named spaces resolve to exact quadruples") {
    NamedSpace bmo;
    bmo.kind = NamedSpace::Kind::Bmo;
    bmo.d = 2;
    SpaceParams sp = resolve_named(bmo);
    CHECK(sp.scale == Scale::B);
    CHECK(sp.s == ExtRational(0));
    CHECK(sp.p == ExtRational(2));
    CHECK(sp.q == ExtRational(2));
    CHECK(sp.tau == ExtRational(1, 2));
    CHECK(sp.d == 2);

    NamedSpace hy;
    hy.kind = NamedSpace::Kind::Hybrid;
    hy.scale = Scale::F;
    hy.s = ExtRational(1);
    hy.p = ExtRational(3);
    hy.q = ExtRational(2);
    hy.r = ExtRational(-1, 4);
    hy.d = 2;
    SpaceParams hsp = resolve_named(hy);
    // r = d (tau - 1/p) recovers the hybrid exponent exactly
    CHECK(ExtRational(hsp.d) * (hsp.tau - hsp.p.reciprocal()) == hy.r);

    NamedSpace nm;
    nm.kind = NamedSpace::Kind::BesovMorrey;
    nm.p = ExtRational(2);
    nm.u = ExtRational(4);
    nm.q = ExtRational(3);
    CHECK_THROWS_AS(resolve_named(nm), std::invalid_argument);
    nm.q = ExtRational::infinity();
    SpaceParams msp = resolve_named(nm);
    CHECK(msp.tau == ExtRational(1, 4));

    NamedSpace tl;
    tl.kind = NamedSpace::Kind::TriebelLizorkinMorrey;
    tl.p = ExtRational(2);
    tl.u = ExtRational(4);
    tl.q = ExtRational(3);
    SpaceParams tsp = resolve_named(tl);
    CHECK(tsp.scale == Scale::F);
    CHECK(tsp.tau == ExtRational(1, 4));
}

TEST_CASE("critical exponent frozen values") {
    GammaValue a = gamma(ExtRational(2), ExtRational(0), ExtRational(2), ExtRational(1));
    CHECK(a.gamma == ExtRational(1));
    CHECK(a.branch == GammaBranch::Tau2Large);

    GammaValue b = gamma(ExtRational(3), ExtRational(1, 4), ExtRational(2), ExtRational(1, 8));
    CHECK(b.gamma == ExtRational(0));
    CHECK(b.branch == GammaBranch::BothModerate_Zero);

    // tau1 on the threshold, tau2 below it: 1/p1 - tau1
    GammaValue c = gamma(ExtRational(2), ExtRational(1, 2), ExtRational(3), ExtRational(0));
    CHECK(c.gamma == ExtRational(0));
    CHECK(c.branch == GammaBranch::Tau1Large);

    // interior, inner max attained by (p1/p2) tau1: p1=2, tau1=1/4, p2=4, tau2=0
    // 1/2 - 1/4 - 1/4 + max{0, (1/2)(1/4)} = 1/8
    GammaValue e = gamma(ExtRational(2), ExtRational(1, 4), ExtRational(4), ExtRational(0));
    CHECK(e.gamma == ExtRational(1, 8));
    CHECK(e.branch == GammaBranch::BothModerate_Tau1Branch);

    // interior, inner max attained by tau2
    GammaValue f = gamma(ExtRational(2), ExtRational(0), ExtRational(4), ExtRational(1, 8));
    CHECK(f.gamma == ExtRational(3, 8));
    CHECK(f.branch == GammaBranch::BothModerate_Tau2Branch);
}

TEST_CASE("critical exponent piecewise form equals the max form") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(0, 8), den(1, 8), pnum(1, 8);
    for (int k = 0; k < 5000; ++k) {
        ExtRational p1 = k % 7 == 0 ? ExtRational::infinity() : ExtRational(pnum(rng), den(rng));
        ExtRational p2 = k % 11 == 0 ? ExtRational::infinity() : ExtRational(pnum(rng), den(rng));
        ExtRational t1 = k % 5 == 0 && p1.is_finite() ? p1.reciprocal() : ExtRational(num(rng), den(rng));
        ExtRational t2 = k % 3 == 0 && p2.is_finite() ? p2.reciprocal() : ExtRational(num(rng), den(rng));
        // gamma() cross-checks against the max form internally and throws on
        // any disagreement
        GammaValue g = gamma(p1, t1, p2, t2);
        CHECK(g.gamma == gamma_max_form(p1, t1, p2, t2));
    }
}

TEST_CASE("rule table integrity") {
    const auto& table = rule_catalog();
    CHECK(table.size() >= 20);
    for (const auto& [id, statement] : table) {
        CHECK(!statement.empty());
        for (char c : id) {
            bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '-';
            if (!ok) FAIL("unexpected character in rule id: " << id);
        }
    }
    CHECK(rule_statement("gap.compact") == table.at("gap.compact"));
    CHECK_THROWS_AS(rule_statement("no.such.rule"), std::logic_error);
}
