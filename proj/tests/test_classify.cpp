// Rule engine fixtures: the decision surface of the embedding classifier on
// domains and on R^d, the named-space front ends, and the global soundness
// invariants.

#include "morrey/classify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

using namespace morrey;

namespace {

SpaceParams mk(Scale scale, ExtRational s, ExtRational p, ExtRational q, ExtRational tau,
               int d = 1, Setting setting = Setting::Domain) {
    return SpaceParams{scale, s, p, q, tau, d, setting};
}

bool trace_has(const Verdict& v, const std::string& rule_id) {
    for (const auto& ra : v.trace)
        if (ra.rule_id == rule_id) return true;
    return false;
}

bool list_has(const std::vector<std::string>& xs, const std::string& x) {
    for (const auto& e : xs)
        if (e == x) return true;
    return false;
}

}  // namespace

TEST_CASE("strict smoothness gap dominates everything else") {
    // gamma = 0, s1 - s2 = 1 > 0
    Verdict v = classify({mk(Scale::B, 1, 2, 2, 0), mk(Scale::B, 0, 2, 2, 0)});
    CHECK(v.relation == Relation::Compact);
    CHECK(v.delta == ExtRational(1));
    CHECK(v.gamma_value.gamma == ExtRational(0));
    CHECK(trace_has(v, "gap.compact"));

    // below the critical exponent
    Verdict w = classify({mk(Scale::B, 0, 2, 2, 0), mk(Scale::B, 0, 2, 2, ExtRational(1))});
    CHECK(w.relation == Relation::NotContinuous);
    CHECK(trace_has(w, "gap.none"));
}

TEST_CASE("identity embedding is continuous but never compact") {
    for (Scale scale : {Scale::B, Scale::F})
        for (Setting setting : {Setting::Domain, Setting::Rn}) {
            SpaceParams sp = mk(scale, ExtRational(1, 2), 2, 3, ExtRational(1, 4), 2, setting);
            Verdict v = classify({sp, sp});
            CHECK(v.relation == Relation::ContinuousNotCompact);
        }
}

TEST_CASE("limiting case, target in the large region") {
    // threshold 1/2 - 0 - 1 + 1 = 1/2 = delta
    Verdict v = classify({mk(Scale::B, ExtRational(1, 2), 2, 1, 0), mk(Scale::B, 0, 1, ExtRational::infinity(), 1)});
    CHECK(v.relation == Relation::ContinuousNotCompact);
    CHECK(trace_has(v, "limit.target-large"));

    // bmo source into the collapsed class at the exact limiting smoothness
    NamedSpace bmo;
    bmo.kind = NamedSpace::Kind::Bmo;
    bmo.d = 2;
    SpaceParams src = resolve_named(bmo);
    SpaceParams tgt = mk(Scale::B, ExtRational(-1), 2, ExtRational::infinity(), ExtRational(1), 2);
    // s2 = -d(tau - 1/p) = -2(1 - 1/2) = -1
    Verdict w = classify({src, tgt});
    CHECK(w.relation == Relation::ContinuousNotCompact);

    // raising s2 by one breaks the threshold inequality
    tgt.s = ExtRational(0);
    Verdict x = classify({src, tgt});
    CHECK(x.relation == Relation::NotContinuous);
    CHECK(trace_has(x, "gap.none"));
}

TEST_CASE("limiting case, source in the large region") {
    SpaceParams src = mk(Scale::B, 1, 1, 3, ExtRational(2));
    SpaceParams tgt = mk(Scale::B, 2, 2, ExtRational::infinity(), 0);
    // gamma = 1/p1 - tau1 = 1 - 2 = -1 = delta
    Verdict v = classify({src, tgt});
    CHECK(v.gamma_value.gamma == ExtRational(-1));
    CHECK(v.delta == ExtRational(-1));
    CHECK(v.relation == Relation::ContinuousNotCompact);
    CHECK(trace_has(v, "limit.source-large"));

    tgt.q = ExtRational(2);
    Verdict w = classify({src, tgt});
    CHECK(w.relation == Relation::NotContinuous);
    CHECK(trace_has(w, "limit.source-large"));

    // bmo as the target sits on the boundary with finite q: never continuous
    NamedSpace bmo;
    bmo.kind = NamedSpace::Kind::Bmo;
    SpaceParams bmo_sp = resolve_named(bmo);
    // gamma = 1/p1 - tau1 = -1 and delta = (-1 - 0)/1 = -1: the limiting case
    SpaceParams large = mk(Scale::B, ExtRational(-1), 1, 3, ExtRational(2));
    Verdict x = classify({large, bmo_sp});
    REQUIRE(x.delta == x.gamma_value.gamma);
    CHECK(x.relation == Relation::NotContinuous);
}

TEST_CASE("limiting case on the B scale with moderate regions") {
    SECTION("equal smoothness, q comparison with the harmonic coefficient") {
        Verdict v = classify({mk(Scale::B, 0, 2, 1, ExtRational(1, 4)),
                              mk(Scale::B, 0, 2, 2, ExtRational(1, 4))});
        CHECK(v.relation == Relation::ContinuousNotCompact);
        CHECK(trace_has(v, "limit.b.equal-s-q"));
    }
    SECTION("jump branch with strictly increasing p tau product") {
        Verdict v = classify({mk(Scale::B, ExtRational(1, 4), 2, 5, 0),
                              mk(Scale::B, 0, 2, ExtRational(1, 2), ExtRational(1, 4))});
        REQUIRE(v.delta == v.gamma_value.gamma);
        CHECK(v.relation == Relation::ContinuousNotCompact);
        CHECK(trace_has(v, "limit.b.jump"));
    }
    SECTION("slope branch needs the scaled q inequality") {
        SpaceParams src = mk(Scale::B, ExtRational(1, 4), 1, 1, ExtRational(1, 2));
        SpaceParams tgt = mk(Scale::B, 0, 2, 2, 0);
        Verdict v = classify({src, tgt});
        REQUIRE(v.gamma_value.gamma == ExtRational(1, 4));
        CHECK(v.relation == Relation::ContinuousNotCompact);
        CHECK(trace_has(v, "limit.b.slope-q"));
    }
    SECTION("the documented gap between sufficient and necessary") {
        SpaceParams src = mk(Scale::B, ExtRational(1, 4), 1, 2, ExtRational(1, 2));
        SpaceParams tgt = mk(Scale::B, 0, 2, 2, 0);
        Verdict v = classify({src, tgt});
        REQUIRE(v.gamma_value.gamma == ExtRational(1, 4));
        CHECK(v.relation == Relation::Unknown);
        CHECK(v.unknown_detail == "gap");
        CHECK(list_has(v.sufficient_failed, "limit.b.slope-q"));
        CHECK(list_has(v.necessary_satisfied, "limit.b.q-necessary"));
    }
    SECTION("q decrease on the slope branch is fatal") {
        SpaceParams src = mk(Scale::B, ExtRational(1, 4), 1, 3, ExtRational(1, 2));
        SpaceParams tgt = mk(Scale::B, 0, 2, 2, 0);
        Verdict v = classify({src, tgt});
        CHECK(v.relation == Relation::NotContinuous);
        CHECK(trace_has(v, "limit.b.q-necessary"));
    }
}

TEST_CASE("limiting case on the F scale with moderate regions") {
    SECTION("boundary to boundary compares q directly") {
        Verdict v = classify({mk(Scale::F, 0, 2, 1, ExtRational(1, 2)),
                              mk(Scale::F, 0, 2, 2, ExtRational(1, 2))});
        CHECK(v.relation == Relation::ContinuousNotCompact);
        Verdict w = classify({mk(Scale::F, 0, 2, 3, ExtRational(1, 2)),
                              mk(Scale::F, 0, 2, 2, ExtRational(1, 2))});
        CHECK(w.relation == Relation::NotContinuous);
    }
    SECTION("interior to boundary holds with no q condition") {
        Verdict v = classify({mk(Scale::F, ExtRational(1, 4), 2, 5, ExtRational(1, 4)),
                              mk(Scale::F, 0, 2, ExtRational(1, 2), ExtRational(1, 2))});
        REQUIRE(v.delta == v.gamma_value.gamma);
        CHECK(v.relation == Relation::ContinuousNotCompact);
    }
    SECTION("boundary to interior has a gap window") {
        SpaceParams src = mk(Scale::F, 0, 2, 3, ExtRational(1, 2));
        SpaceParams tgt = mk(Scale::F, 0, 4, 2, 0);
        Verdict v = classify({src, tgt});
        REQUIRE(v.gamma_value.gamma == ExtRational(0));
        CHECK(v.relation == Relation::Unknown);
        CHECK(v.unknown_detail == "gap");

        src.q = ExtRational(5);  // above max{p2, q2} = 4
        CHECK(classify({src, tgt}).relation == Relation::NotContinuous);
        src.q = ExtRational(1);
        CHECK(classify({src, tgt}).relation == Relation::ContinuousNotCompact);
    }
    SECTION("interior pair with integrability slack holds for all q") {
        SpaceParams src = mk(Scale::F, ExtRational(3, 16), 2, 5, ExtRational(1, 8));
        SpaceParams tgt = mk(Scale::F, 0, 4, ExtRational(1, 2), 0);
        Verdict v = classify({src, tgt});
        REQUIRE(v.delta == v.gamma_value.gamma);
        CHECK(v.relation == Relation::ContinuousNotCompact);
    }
    SECTION("interior pair without slack falls back to q comparisons") {
        SpaceParams src = mk(Scale::F, ExtRational(1, 16), 2, 2, ExtRational(3, 8));
        SpaceParams tgt = mk(Scale::F, 0, 4, 3, ExtRational(1, 8));
        REQUIRE(classify({src, tgt}).gamma_value.gamma == ExtRational(1, 16));
        // q1 in the open window (min{1,p1/p2} q2, q2] = (3/2, 3]
        CHECK(classify({src, tgt}).relation == Relation::Unknown);
        src.q = ExtRational(1);
        CHECK(classify({src, tgt}).relation == Relation::ContinuousNotCompact);
        src.q = ExtRational(4);
        CHECK(classify({src, tgt}).relation == Relation::NotContinuous);
    }
}

TEST_CASE("classical limiting cases with both tau zero") {
    SECTION("B scale ties break on q") {
        Verdict v = classify({mk(Scale::B, ExtRational(1, 2), 1, 3, 0), mk(Scale::B, 0, 2, 2, 0)});
        CHECK(v.relation == Relation::NotContinuous);
        Verdict w = classify({mk(Scale::B, ExtRational(1, 2), 1, 2, 0), mk(Scale::B, 0, 2, 2, 0)});
        CHECK(w.relation == Relation::ContinuousNotCompact);
    }
    SECTION("F scale ignores q when the integrability drop is strict") {
        Verdict v = classify({mk(Scale::F, ExtRational(1, 2), 1, 3, 0), mk(Scale::F, 0, 2, 2, 0)});
        CHECK(v.relation == Relation::ContinuousNotCompact);
    }
    SECTION("equal parameters") {
        Verdict v = classify({mk(Scale::B, 0, 2, 2, 0), mk(Scale::B, 0, 2, 2, 0)});
        CHECK(v.relation == Relation::ContinuousNotCompact);
    }
}

TEST_CASE("whole-space classification") {
    SECTION("B scale, target large, equality holds") {
        Verdict v = classify({mk(Scale::B, ExtRational(1, 2), 2, 1, 0, 1, Setting::Rn),
                              mk(Scale::B, 0, 1, 5, 1, 1, Setting::Rn)});
        CHECK(v.relation == Relation::ContinuousNotCompact);
    }
    SECTION("compactness never holds on the whole space") {
        Verdict v = classify({mk(Scale::B, 2, 2, 2, 0, 1, Setting::Rn),
                              mk(Scale::B, 0, 2, 2, 0, 1, Setting::Rn)});
        CHECK(v.relation == Relation::ContinuousNotCompact);
        CHECK(v.delta > v.gamma_value.gamma);
    }
    SECTION("F scale, equal parameters except q") {
        Verdict v = classify({mk(Scale::F, 0, 2, 1, ExtRational(1, 4), 1, Setting::Rn),
                              mk(Scale::F, 0, 2, 2, ExtRational(1, 4), 1, Setting::Rn)});
        CHECK(v.relation == Relation::ContinuousNotCompact);
        Verdict w = classify({mk(Scale::F, 0, 2, 3, ExtRational(1, 4), 1, Setting::Rn),
                              mk(Scale::F, 0, 2, 2, ExtRational(1, 4), 1, Setting::Rn)});
        CHECK(w.relation == Relation::NotContinuous);
    }
    SECTION("F scale, source large, target small is not covered") {
        SpaceParams src = mk(Scale::F, ExtRational(-1, 2), 2, 2, ExtRational(1), 1, Setting::Rn);
        SpaceParams tgt = mk(Scale::F, 0, 2, 2, 0, 1, Setting::Rn);
        // delta = -1/2 = gamma = 1/p1 - tau1
        Verdict v = classify({src, tgt});
        REQUIRE(v.delta == v.gamma_value.gamma);
        CHECK(v.relation == Relation::Unknown);
        CHECK(v.unknown_detail == "not_covered");
    }
}

TEST_CASE("smoothness Morrey class against the uniform class") {
    NamedSpace morrey_side;
    morrey_side.kind = NamedSpace::Kind::BesovMorrey;
    morrey_side.s = ExtRational(1, 2);
    morrey_side.p = ExtRational(2);
    morrey_side.u = ExtRational(2);
    morrey_side.q = ExtRational(2);

    NamedSpace uniform;
    uniform.kind = NamedSpace::Kind::BesovMorrey;
    uniform.s = ExtRational(0);
    uniform.p = ExtRational::infinity();
    uniform.u = ExtRational::infinity();
    uniform.q = ExtRational(3);

    SECTION("into the uniform class at the exact threshold") {
        Verdict v = classify_besov_morrey(morrey_side, uniform);
        CHECK(v.relation == Relation::ContinuousNotCompact);
        CHECK(trace_has(v, "morrey.to-uniform"));
    }
    SECTION("into the uniform class above the threshold") {
        NamedSpace src = morrey_side;
        src.s = ExtRational(1);
        Verdict v = classify_besov_morrey(src, uniform);
        CHECK(v.relation == Relation::Compact);
    }
    SECTION("into the uniform class with decreasing q at the threshold") {
        NamedSpace src = morrey_side;
        src.q = ExtRational(5);
        Verdict v = classify_besov_morrey(src, uniform);
        CHECK(v.relation == Relation::NotContinuous);
    }
    SECTION("from the uniform class") {
        NamedSpace u2 = uniform;
        u2.s = ExtRational(1, 2);
        u2.q = ExtRational(2);
        Verdict eq = classify_besov_morrey(u2, morrey_side);
        CHECK(eq.relation == Relation::ContinuousNotCompact);
        u2.q = ExtRational(3);
        CHECK(classify_besov_morrey(u2, morrey_side).relation == Relation::NotContinuous);
        u2.s = ExtRational(1);
        CHECK(classify_besov_morrey(u2, morrey_side).relation == Relation::Compact);
    }
    SECTION("two genuine Morrey endpoints are rejected") {
        NamedSpace other = morrey_side;
        other.u = ExtRational(4);
        CHECK_THROWS_AS(classify_besov_morrey(morrey_side, other), std::invalid_argument);
    }
}

TEST_CASE("hybrid pairs ride the translation and the explicit table") {
    NamedSpace h1;
    h1.kind = NamedSpace::Kind::Hybrid;
    h1.scale = Scale::B;
    h1.p = ExtRational(2);
    h1.q = ExtRational(5);
    h1.d = 1;

    SECTION("positive exponent ignores q entirely") {
        NamedSpace a = h1, b = h1;
        a.r = b.r = ExtRational(1);
        a.s = b.s = ExtRational(0);
        b.q = ExtRational(1, 2);
        Verdict v = classify_hybrid(a, b);
        CHECK(is_continuous(v.relation));
        CHECK(trace_has(v, "hybrid.table"));
    }
    SECTION("zero exponent with infinite source q needs a strict smoothness drop") {
        NamedSpace a = h1, b = h1;
        a.r = b.r = ExtRational(0);
        a.q = ExtRational::infinity();
        b.q = ExtRational(2);
        a.s = b.s = ExtRational(0);
        Verdict v = classify_hybrid(a, b);
        CHECK(v.relation == Relation::NotContinuous);
        a.s = ExtRational(1, 2);
        CHECK(is_continuous(classify_hybrid(a, b).relation));
    }
    SECTION("negative exponent with non-increasing p compares q") {
        NamedSpace a = h1, b = h1;
        a.r = b.r = ExtRational(-1, 2);
        a.p = ExtRational(1);
        b.p = ExtRational(1, 2);
        a.s = b.s = ExtRational(0);
        a.q = ExtRational(1);
        b.q = ExtRational(2);
        Verdict v = classify_hybrid(a, b);
        CHECK(is_continuous(v.relation));
        CHECK(trace_has(v, "hybrid.table"));
        a.q = ExtRational(3);
        CHECK(classify_hybrid(a, b).relation == Relation::NotContinuous);
    }
}

TEST_CASE("soundness ordering and trace discipline on a parameter sweep") {
    std::vector<ExtRational> s_vals = {ExtRational(-1), ExtRational(0), ExtRational(1, 4),
                                       ExtRational(1)};
    std::vector<ExtRational> pq_vals = {ExtRational(1, 2), ExtRational(1), ExtRational(2),
                                        ExtRational::infinity()};
    std::vector<ExtRational> tau_vals = {ExtRational(0), ExtRational(1, 4), ExtRational(1, 2),
                                         ExtRational(1)};
    std::mt19937_64 rng(3);
    auto pick = [&](const std::vector<ExtRational>& xs) {
        return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
    };
    for (int k = 0; k < 4000; ++k) {
        Scale scale = k % 2 ? Scale::B : Scale::F;
        Setting setting = k % 3 ? Setting::Domain : Setting::Rn;
        SpaceParams src = mk(scale, pick(s_vals), pick(pq_vals), pick(pq_vals), pick(tau_vals), 1,
                             setting);
        SpaceParams tgt = mk(scale, pick(s_vals), pick(pq_vals), pick(pq_vals), pick(tau_vals), 1,
                             setting);
        if (scale == Scale::F) {
            if (src.p.is_inf()) src.p = ExtRational(2);
            if (tgt.p.is_inf()) tgt.p = ExtRational(2);
        }
        Verdict v = classify({src, tgt});
        ExtRational dgamma = v.gamma_value.gamma;
        if (v.relation == Relation::Compact) {
            CHECK(v.delta > dgamma);
            CHECK(src.setting == Setting::Domain);
        }
        if (is_continuous(v.relation)) CHECK(v.delta >= dgamma);
        if (v.relation != Relation::Unknown) {
            CHECK(!v.trace.empty());
            for (const auto& ra : v.trace) CHECK(ra.citation == rule_statement(ra.rule_id));
        } else {
            CHECK((v.unknown_detail == "gap" || v.unknown_detail == "not_covered"));
        }
    }
}
