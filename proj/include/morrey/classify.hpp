#pragma once

// Rule engine deciding whether the identity map between two spaces of the
// scale is compact, continuous but not compact, not continuous, or not
// decided by the encoded rules. Every verdict carries a trace of rule
// applications citing the catalog in rules.hpp.

#include "morrey/gamma.hpp"
#include "morrey/rational.hpp"
#include "morrey/rules.hpp"
#include "morrey/spaces.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace morrey {

enum class Relation { Compact, ContinuousNotCompact, NotContinuous, Unknown };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::Compact: return "compact";
        case Relation::ContinuousNotCompact: return "continuous_not_compact";
        case Relation::NotContinuous: return "not_continuous";
        default: return "unknown";
    }
}

inline bool is_continuous(Relation r) {
    return r == Relation::Compact || r == Relation::ContinuousNotCompact;
}

struct EmbeddingQuery {
    SpaceParams src;
    SpaceParams tgt;

    void validate() const {
        src.validate();
        tgt.validate();
        if (src.scale != tgt.scale) throw std::invalid_argument("query requires equal scales");
        if (src.d != tgt.d) throw std::invalid_argument("query requires equal dimensions");
        if (src.setting != tgt.setting) throw std::invalid_argument("query requires equal settings");
    }
};

struct RuleApplication {
    std::string rule_id;
    std::string citation;  // statement from the rule catalog
    std::vector<std::pair<std::string, std::string>> values;
};

struct Verdict {
    Relation relation = Relation::Unknown;
    std::string unknown_detail;                    // "", "gap" or "not_covered"
    std::vector<std::string> sufficient_failed;    // rule ids, gap verdicts only
    std::vector<std::string> necessary_satisfied;  // rule ids, gap verdicts only
    std::vector<RuleApplication> trace;
    GammaValue gamma_value{ExtRational(0), GammaBranch::BothModerate_Zero};
    ExtRational delta = 0;  // (s1 - s2)/d
};

using NamedValues = std::vector<std::pair<std::string, std::string>>;

inline RuleApplication rule_application(const std::string& rule_id, NamedValues values) {
    return {rule_id, rule_statement(rule_id), std::move(values)};
}

// 1/p1 - tau1 - 1/p2 + tau2, the threshold on the branches where one side
// sits on or above the integrability threshold.
inline ExtRational jump_exponent(const SpaceParams& src, const SpaceParams& tgt) {
    return src.p.reciprocal() - src.tau - tgt.p.reciprocal() + tgt.tau;
}

// 1/p1 - tau1 - 1/p2 + (p1/p2) tau1; equals (1 - p1 tau1)(1/p1 - 1/p2) and
// is positive exactly when tau1 < 1/p1 and p1 < p2.
inline ExtRational slope_exponent(const SpaceParams& src, const SpaceParams& tgt) {
    ExtRational term = src.tau.sign() == 0
                           ? ExtRational(0)
                           : ratio_convention(src.p, tgt.p) * src.tau;
    return src.p.reciprocal() - src.tau - tgt.p.reciprocal() + term;
}

// q1 <= coef * q2 with coef >= 0 finite and q2 possibly infinite.
inline bool q_leq_scaled(const ExtRational& q1, const ExtRational& coef, const ExtRational& q2) {
    if (coef.sign() == 0) return false;
    if (q2.is_inf()) return true;
    return q1 <= coef * q2;
}

// Shared verdict skeleton: gamma, delta and the coincidence aliases of both
// endpoints. Dispatch happens on the original parameters; the comparison
// delta - gamma is invariant under every alias recorded here.
inline Verdict verdict_prologue(const EmbeddingQuery& q) {
    Verdict v;
    v.gamma_value = gamma(q.src, q.tgt);
    v.delta = (q.src.s - q.tgt.s) / ExtRational(q.src.d);
    const char* sides[2] = {"source", "target"};
    for (int side = 0; side < 2; ++side) {
        auto chain = normalize_coincidence(side == 0 ? q.src : q.tgt);
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            const char* id = region_of(chain[i]) == RegionTag::Large ? "alias.collapse"
                                                                     : "alias.f-boundary";
            v.trace.push_back(rule_application(
                id, {{"side", sides[side]}, {"from", chain[i].str()}, {"to", chain[i + 1].str()}}));
        }
    }
    return v;
}

inline void require_limiting(const EmbeddingQuery& q, const Verdict& v, const char* who) {
    if (q.src.setting != Setting::Domain)
        throw std::invalid_argument(std::string(who) + ": domain setting required");
    if (v.delta != v.gamma_value.gamma)
        throw std::invalid_argument(std::string(who) + ": limiting case required");
}

// ------------------------------------
// Domain, limiting case: large regions
// ------------------------------------

inline Verdict classify_domain_tau2large(const EmbeddingQuery& q) {
    q.validate();
    Verdict v = verdict_prologue(q);
    require_limiting(q, v, "classify_domain_tau2large");
    if (region_of(q.tgt) != RegionTag::Large)
        throw std::invalid_argument("classify_domain_tau2large: target large region required");
    v.relation = Relation::ContinuousNotCompact;
    v.trace.push_back(rule_application(
        "limit.target-large",
        {{"gamma", v.gamma_value.gamma.str()}, {"delta", v.delta.str()}}));
    return v;
}

inline Verdict classify_domain_tau1large(const EmbeddingQuery& q) {
    q.validate();
    Verdict v = verdict_prologue(q);
    require_limiting(q, v, "classify_domain_tau1large");
    if (region_of(q.src) != RegionTag::Large || region_of(q.tgt) == RegionTag::Large)
        throw std::invalid_argument(
            "classify_domain_tau1large: source large, target below required");
    v.relation = q.tgt.q.is_inf() ? Relation::ContinuousNotCompact : Relation::NotContinuous;
    v.trace.push_back(rule_application("limit.source-large", {{"q2", q.tgt.q.str()}}));
    return v;
}

// --------------------------------------
// Domain, limiting case: tau1 = tau2 = 0
// --------------------------------------

inline Verdict classify_classical(const EmbeddingQuery& q) {
    q.validate();
    Verdict v = verdict_prologue(q);
    require_limiting(q, v, "classify_classical");
    if (q.src.tau.sign() != 0 || q.tgt.tau.sign() != 0)
        throw std::invalid_argument("classify_classical: tau1 = tau2 = 0 required");
    ExtRational pgap = q.src.p.reciprocal() - q.tgt.p.reciprocal();
    NamedValues values{{"pgap", pgap.str()}, {"q1", q.src.q.str()}, {"q2", q.tgt.q.str()}};
    if (q.src.scale == Scale::F && pgap.sign() > 0) {
        v.relation = Relation::ContinuousNotCompact;
        v.trace.push_back(rule_application("limit.classical.f", std::move(values)));
        return v;
    }
    v.relation = q.src.q <= q.tgt.q ? Relation::ContinuousNotCompact : Relation::NotContinuous;
    const char* id = q.src.scale == Scale::B ? "limit.classical.b" : "limit.classical.f";
    v.trace.push_back(rule_application(id, std::move(values)));
    return v;
}

// ----------------------------------------------
// Domain, limiting case: B scale, both below/on
// the threshold, at least one tau positive
// ----------------------------------------------

inline Verdict classify_domain_B_moderate(const EmbeddingQuery& q) {
    q.validate();
    Verdict v = verdict_prologue(q);
    require_limiting(q, v, "classify_domain_B_moderate");
    if (q.src.scale != Scale::B)
        throw std::invalid_argument("classify_domain_B_moderate: B scale required");
    if (region_of(q.src) == RegionTag::Large || region_of(q.tgt) == RegionTag::Large)
        throw std::invalid_argument("classify_domain_B_moderate: large regions excluded");
    if (q.src.tau.sign() == 0 && q.tgt.tau.sign() == 0)
        throw std::invalid_argument("classify_domain_B_moderate: tau1 + tau2 > 0 required");

    const ExtRational& g = v.gamma_value.gamma;
    ExtRational e_jump = jump_exponent(q.src, q.tgt);
    ExtRational e_slope = slope_exponent(q.src, q.tgt);
    ExtRational ratio = ratio_convention(q.src.p, q.tgt.p);
    ExtRational pc1 = product_convention(q.src.p, q.src.tau);
    ExtRational pc2 = product_convention(q.tgt.p, q.tgt.tau);
    bool jump_branch = g == e_jump && e_jump.sign() > 0;
    bool slope_branch = g == e_slope && e_slope.sign() > 0;

    if (jump_branch && pc1 < pc2) {
        v.relation = Relation::ContinuousNotCompact;
        v.trace.push_back(rule_application(
            "limit.b.jump",
            {{"e", e_jump.str()}, {"p1tau1", pc1.str()}, {"p2tau2", pc2.str()}}));
        return v;
    }
    if (slope_branch && q_leq_scaled(q.src.q, ratio, q.tgt.q)) {
        v.relation = Relation::ContinuousNotCompact;
        v.trace.push_back(rule_application(
            "limit.b.slope-q",
            {{"e", e_slope.str()}, {"ratio", ratio.str()}, {"q1", q.src.q.str()}, {"q2", q.tgt.q.str()}}));
        return v;
    }
    if (q.src.s == q.tgt.s && q_leq_scaled(q.src.q, min(ExtRational(1), ratio), q.tgt.q)) {
        v.relation = Relation::ContinuousNotCompact;
        v.trace.push_back(rule_application(
            "limit.b.equal-s-q",
            {{"coef", min(ExtRational(1), ratio).str()}, {"q1", q.src.q.str()}, {"q2", q.tgt.q.str()}}));
        return v;
    }
    bool q_necessary_branch = g.sign() == 0 || slope_branch;
    if (q_necessary_branch && q.src.q > q.tgt.q) {
        v.relation = Relation::NotContinuous;
        v.trace.push_back(rule_application(
            "limit.b.q-necessary",
            {{"gamma", g.str()}, {"q1", q.src.q.str()}, {"q2", q.tgt.q.str()}}));
        return v;
    }

    v.relation = Relation::Unknown;
    v.unknown_detail = "gap";
    if (jump_branch) v.sufficient_failed.push_back("limit.b.jump");
    if (slope_branch) v.sufficient_failed.push_back("limit.b.slope-q");
    if (q.src.s == q.tgt.s) v.sufficient_failed.push_back("limit.b.equal-s-q");
    if (q_necessary_branch) {
        v.necessary_satisfied.push_back("limit.b.q-necessary");
        v.trace.push_back(rule_application(
            "limit.b.q-necessary",
            {{"gamma", g.str()}, {"q1", q.src.q.str()}, {"q2", q.tgt.q.str()}}));
    }
    return v;
}

// ----------------------------------------------
// Domain, limiting case: F scale, both below/on
// the threshold, at least one tau positive
// ----------------------------------------------

inline Verdict classify_domain_F_moderate(const EmbeddingQuery& q) {
    q.validate();
    Verdict v = verdict_prologue(q);
    require_limiting(q, v, "classify_domain_F_moderate");
    if (q.src.scale != Scale::F)
        throw std::invalid_argument("classify_domain_F_moderate: F scale required");
    RegionTag r1 = region_of(q.src);
    RegionTag r2 = region_of(q.tgt);
    if (r1 == RegionTag::Large || r2 == RegionTag::Large)
        throw std::invalid_argument("classify_domain_F_moderate: large regions excluded");
    if (q.src.tau.sign() == 0 && q.tgt.tau.sign() == 0)
        throw std::invalid_argument("classify_domain_F_moderate: tau1 + tau2 > 0 required");

    NamedValues qvals{{"q1", q.src.q.str()}, {"q2", q.tgt.q.str()}};
    if (r1 == RegionTag::Interior && r2 == RegionTag::Interior) {
        ExtRational pgap = q.src.p.reciprocal() - q.tgt.p.reciprocal();
        ExtRational tgap = q.src.tau - q.tgt.tau;
        if (pgap > tgap) {
            v.relation = Relation::ContinuousNotCompact;
            v.trace.push_back(rule_application(
                "limit.f.interior.scales", {{"pgap", pgap.str()}, {"tgap", tgap.str()}}));
            return v;
        }
        ExtRational coef = min(ExtRational(1), ratio_convention(q.src.p, q.tgt.p));
        if (q_leq_scaled(q.src.q, coef, q.tgt.q)) {
            v.relation = Relation::ContinuousNotCompact;
            v.trace.push_back(rule_application("limit.f.interior.q", std::move(qvals)));
            return v;
        }
        if (q.src.q > q.tgt.q) {
            v.relation = Relation::NotContinuous;
            v.trace.push_back(
                rule_application("limit.f.interior.q-necessary", std::move(qvals)));
            return v;
        }
        v.relation = Relation::Unknown;
        v.unknown_detail = "gap";
        v.sufficient_failed.push_back("limit.f.interior.q");
        v.necessary_satisfied.push_back("limit.f.interior.q-necessary");
        v.trace.push_back(rule_application("limit.f.interior.q-necessary", std::move(qvals)));
        return v;
    }
    if (r1 == RegionTag::Boundary && r2 == RegionTag::Boundary) {
        v.relation = q.src.q <= q.tgt.q ? Relation::ContinuousNotCompact : Relation::NotContinuous;
        v.trace.push_back(rule_application("limit.f.boundary.both", std::move(qvals)));
        return v;
    }
    if (r1 == RegionTag::Boundary) {
        if (q.src.q <= q.tgt.q) {
            v.relation = Relation::ContinuousNotCompact;
            v.trace.push_back(rule_application("limit.f.boundary.source", std::move(qvals)));
            return v;
        }
        ExtRational cap = max(q.tgt.p, q.tgt.q);
        if (q.src.q > cap) {
            v.relation = Relation::NotContinuous;
            v.trace.push_back(rule_application(
                "limit.f.boundary.source-necessary",
                {{"q1", q.src.q.str()}, {"cap", cap.str()}}));
            return v;
        }
        v.relation = Relation::Unknown;
        v.unknown_detail = "gap";
        v.sufficient_failed.push_back("limit.f.boundary.source");
        v.necessary_satisfied.push_back("limit.f.boundary.source-necessary");
        v.trace.push_back(rule_application(
            "limit.f.boundary.source-necessary",
            {{"q1", q.src.q.str()}, {"cap", cap.str()}}));
        return v;
    }
    v.relation = Relation::ContinuousNotCompact;
    v.trace.push_back(rule_application("limit.f.boundary.target", std::move(qvals)));
    return v;
}

// ---------------------------
// Full space: no compactness
// ---------------------------

inline Verdict classify_rn(const EmbeddingQuery& q);

namespace detail {

inline Verdict classify_rn_b_moderate(const EmbeddingQuery& q, Verdict v) {
    ExtRational e_jump = jump_exponent(q.src, q.tgt);
    ExtRational e_slope = slope_exponent(q.src, q.tgt);
    ExtRational lhs = q.src.tau / q.tgt.p;
    ExtRational rhs = q.tgt.tau / q.src.p;
    NamedValues nec_values{{"e", e_jump.str()},
                           {"delta", v.delta.str()},
                           {"tau1/p2", lhs.str()},
                           {"tau2/p1", rhs.str()}};

    bool necessary_ok = e_jump.sign() >= 0 && lhs <= rhs && v.delta >= e_jump &&
                        (q.src.s != q.tgt.s || q.src.q <= q.tgt.q);
    if (!necessary_ok) {
        v.relation = Relation::NotContinuous;
        v.trace.push_back(rule_application("rn.b.moderate.necessary", std::move(nec_values)));
        return v;
    }
    bool slope_branch = v.delta == e_slope && e_slope.sign() > 0;
    if (slope_branch && q.src.q > q.tgt.q) {
        v.relation = Relation::NotContinuous;
        v.trace.push_back(rule_application(
            "rn.b.slope-q-necessary",
            {{"e", e_slope.str()}, {"q1", q.src.q.str()}, {"q2", q.tgt.q.str()}}));
        return v;
    }

    if (v.delta > e_jump) {
        v.relation = Relation::ContinuousNotCompact;
        v.trace.push_back(rule_application(
            "rn.b.moderate.sufficient", {{"e", e_jump.str()}, {"delta", v.delta.str()}}));
        return v;
    }
    if (q.src.tau == q.tgt.tau && e_jump.sign() > 0) {
        v.relation = Relation::ContinuousNotCompact;
        v.trace.push_back(rule_application("rn.b.equal-tau", {{"e", e_jump.str()}}));
        return v;
    }
    ExtRational pc1 = product_convention(q.src.p, q.src.tau);
    ExtRational pc2 = product_convention(q.tgt.p, q.tgt.tau);
    bool blocked = q.src.s == q.tgt.s && pc1 == ExtRational(1) && pc2 == ExtRational(1) &&
                   q.src.p < q.tgt.p;
    bool skew = q.src.s != q.tgt.s && q.src.tau != q.tgt.tau;
    bool equality_ok =
        (skew && lhs < rhs) ||
        (skew && lhs == rhs && q.src.tau / q.tgt.q <= q.tgt.tau / q.src.q) ||
        (!skew && q.src.q <= q.tgt.q);
    if (!blocked && equality_ok) {
        v.relation = Relation::ContinuousNotCompact;
        v.trace.push_back(rule_application(
            "rn.b.moderate.sufficient",
            {{"e", e_jump.str()}, {"q1", q.src.q.str()}, {"q2", q.tgt.q.str()}}));
        return v;
    }

    v.relation = Relation::Unknown;
    v.unknown_detail = "gap";
    v.sufficient_failed.push_back("rn.b.moderate.sufficient");
    v.necessary_satisfied.push_back("rn.b.moderate.necessary");
    v.trace.push_back(rule_application("rn.b.moderate.necessary", std::move(nec_values)));
    if (slope_branch) {
        v.necessary_satisfied.push_back("rn.b.slope-q-necessary");
        v.trace.push_back(rule_application(
            "rn.b.slope-q-necessary",
            {{"e", e_slope.str()}, {"q1", q.src.q.str()}, {"q2", q.tgt.q.str()}}));
    }
    return v;
}

inline Verdict classify_rn_b(const EmbeddingQuery& q, Verdict v) {
    RegionTag r1 = region_of(q.src);
    RegionTag r2 = region_of(q.tgt);
    ExtRational e_jump = jump_exponent(q.src, q.tgt);
    if (r2 == RegionTag::Large) {
        v.relation =
            v.delta >= e_jump ? Relation::ContinuousNotCompact : Relation::NotContinuous;
        v.trace.push_back(rule_application(
            "rn.b.target-large", {{"e", e_jump.str()}, {"delta", v.delta.str()}}));
        return v;
    }
    if (r1 == RegionTag::Large) {
        bool cont = v.delta > e_jump && r2 == RegionTag::Boundary;
        v.relation = cont ? Relation::ContinuousNotCompact : Relation::NotContinuous;
        v.trace.push_back(rule_application(
            "rn.b.source-large",
            {{"e", e_jump.str()}, {"delta", v.delta.str()}, {"target_region", to_string(r2)}}));
        return v;
    }
    return classify_rn_b_moderate(q, std::move(v));
}

inline Verdict classify_rn_f(const EmbeddingQuery& q, Verdict v) {
    RegionTag r1 = region_of(q.src);
    RegionTag r2 = region_of(q.tgt);
    ExtRational e_jump = jump_exponent(q.src, q.tgt);
    if (r2 == RegionTag::Large) {
        const char* id = r1 == RegionTag::Large ? "rn.f.both-large" : "rn.f.target-large";
        v.relation =
            v.delta >= e_jump ? Relation::ContinuousNotCompact : Relation::NotContinuous;
        v.trace.push_back(
            rule_application(id, {{"e", e_jump.str()}, {"delta", v.delta.str()}}));
        return v;
    }
    if (r1 == RegionTag::Interior && r2 == RegionTag::Interior) {
        ExtRational lhs = q.src.tau / q.tgt.p;
        ExtRational rhs = q.tgt.tau / q.src.p;
        bool cont = e_jump.sign() >= 0 && lhs <= rhs &&
                    (v.delta > e_jump ||
                     (v.delta == e_jump && (q.src.s != q.tgt.s || q.src.q <= q.tgt.q)));
        v.relation = cont ? Relation::ContinuousNotCompact : Relation::NotContinuous;
        v.trace.push_back(rule_application(
            "rn.f.interior",
            {{"e", e_jump.str()}, {"delta", v.delta.str()}, {"q1", q.src.q.str()}, {"q2", q.tgt.q.str()}}));
        return v;
    }
    if (r1 == RegionTag::Boundary && r2 == RegionTag::Boundary) {
        // Both sides coincide with B-scale spaces, so the B rules decide.
        auto convert = [](const SpaceParams& sp) {
            SpaceParams out = sp;
            out.scale = Scale::B;
            out.p = sp.q;
            out.tau = sp.q.reciprocal();
            return out;
        };
        Verdict sub = classify_rn({convert(q.src), convert(q.tgt)});
        v.relation = sub.relation;
        v.unknown_detail = sub.unknown_detail;
        v.sufficient_failed = std::move(sub.sufficient_failed);
        v.necessary_satisfied = std::move(sub.necessary_satisfied);
        for (auto& app : sub.trace) v.trace.push_back(std::move(app));
        return v;
    }
    v.relation = Relation::Unknown;
    v.unknown_detail = "not_covered";
    v.trace.push_back(rule_application(
        "rn.f.not-covered",
        {{"source_region", to_string(r1)}, {"target_region", to_string(r2)}}));
    return v;
}

}  // namespace detail

inline Verdict classify_rn(const EmbeddingQuery& q) {
    q.validate();
    if (q.src.setting != Setting::Rn)
        throw std::invalid_argument("classify_rn: full-space setting required");
    Verdict v = verdict_prologue(q);
    return q.src.scale == Scale::B ? detail::classify_rn_b(q, std::move(v))
                                   : detail::classify_rn_f(q, std::move(v));
}

// ----------
// Dispatcher
// ----------

inline Verdict classify(const EmbeddingQuery& q) {
    q.validate();
    if (q.src.setting == Setting::Rn) return classify_rn(q);

    Verdict v = verdict_prologue(q);
    const ExtRational& g = v.gamma_value.gamma;
    if (v.delta > g) {
        v.relation = Relation::Compact;
        v.trace.push_back(rule_application(
            "gap.compact",
            {{"gamma", g.str()}, {"delta", v.delta.str()}, {"branch", to_string(v.gamma_value.branch)}}));
        return v;
    }
    if (v.delta < g) {
        v.relation = Relation::NotContinuous;
        v.trace.push_back(rule_application(
            "gap.none",
            {{"gamma", g.str()}, {"delta", v.delta.str()}, {"branch", to_string(v.gamma_value.branch)}}));
        return v;
    }

    RegionTag r1 = region_of(q.src);
    RegionTag r2 = region_of(q.tgt);
    if (r2 == RegionTag::Large) return classify_domain_tau2large(q);
    if (r1 == RegionTag::Large) return classify_domain_tau1large(q);
    if (q.src.tau.sign() == 0 && q.tgt.tau.sign() == 0) return classify_classical(q);
    return q.src.scale == Scale::B ? classify_domain_B_moderate(q)
                                   : classify_domain_F_moderate(q);
}

// --------------------------------------------
// Named-space queries outside the exact scale
// --------------------------------------------

// Embeddings between a Morrey-type sequence class N^s_{u,p,q} and the
// uniform class B^s_{inf,q} on a domain. The uniform side is recognized as
// u = p = inf or as a classical B space with p = inf.
inline Verdict classify_besov_morrey(const NamedSpace& src, const NamedSpace& tgt) {
    auto is_uniform = [](const NamedSpace& ns) {
        if (ns.kind == NamedSpace::Kind::BesovMorrey)
            return ns.u.is_inf() && ns.p.is_inf();
        return ns.kind == NamedSpace::Kind::Classical && ns.scale == Scale::B && ns.p.is_inf();
    };
    auto is_morrey = [](const NamedSpace& ns) {
        return ns.kind == NamedSpace::Kind::BesovMorrey && ns.u.is_finite() &&
               ns.p.is_finite() && ns.p.sign() > 0 && ns.p <= ns.u;
    };
    if (src.setting != Setting::Domain || tgt.setting != Setting::Domain)
        throw std::invalid_argument("classify_besov_morrey: domain setting required");
    if (src.d != tgt.d)
        throw std::invalid_argument("classify_besov_morrey: equal dimensions required");

    // Exact translation B^{s,1/p-1/u}_{p,q} of each endpoint, used only to
    // report gamma and delta; q plays no role in gamma.
    auto proxy = [](const NamedSpace& ns) {
        SpaceParams sp;
        sp.scale = Scale::B;
        sp.s = ns.s;
        sp.p = ns.p;
        sp.q = ns.q;
        sp.tau = ns.kind == NamedSpace::Kind::Classical
                     ? ExtRational(0)
                     : ns.p.reciprocal() - ns.u.reciprocal();
        sp.d = ns.d;
        sp.setting = ns.setting;
        return sp;
    };

    Verdict v;
    v.delta = (src.s - tgt.s) / ExtRational(src.d);
    if (is_uniform(tgt) && (is_morrey(src) || is_uniform(src))) {
        ExtRational threshold = src.kind == NamedSpace::Kind::Classical
                                    ? ExtRational(0)
                                    : src.u.reciprocal();
        v.gamma_value = gamma(proxy(src), proxy(tgt));
        NamedValues values{{"threshold", threshold.str()},
                           {"delta", v.delta.str()},
                           {"q1", src.q.str()},
                           {"q2", tgt.q.str()}};
        if (v.delta > threshold) {
            v.relation = Relation::Compact;
            v.trace.push_back(rule_application("morrey.to-uniform", values));
            v.trace.push_back(rule_application("morrey.compact-factor", {}));
        } else if (v.delta == threshold && src.q <= tgt.q) {
            v.relation = Relation::ContinuousNotCompact;
            v.trace.push_back(rule_application("morrey.to-uniform", std::move(values)));
        } else {
            v.relation = Relation::NotContinuous;
            v.trace.push_back(rule_application("morrey.to-uniform", std::move(values)));
        }
        return v;
    }
    if (is_uniform(src) && is_morrey(tgt)) {
        v.gamma_value = gamma(proxy(src), proxy(tgt));
        NamedValues values{{"s1", src.s.str()},
                           {"s2", tgt.s.str()},
                           {"q1", src.q.str()},
                           {"q2", tgt.q.str()}};
        if (src.s > tgt.s) {
            v.relation = Relation::Compact;
            v.trace.push_back(rule_application("morrey.from-uniform", values));
            v.trace.push_back(rule_application("morrey.compact-factor", {}));
        } else if (src.s == tgt.s && src.q <= tgt.q) {
            v.relation = Relation::ContinuousNotCompact;
            v.trace.push_back(rule_application("morrey.from-uniform", std::move(values)));
        } else {
            v.relation = Relation::NotContinuous;
            v.trace.push_back(rule_application("morrey.from-uniform", std::move(values)));
        }
        return v;
    }
    throw std::invalid_argument(
        "classify_besov_morrey: one endpoint must be the uniform class B^s_{inf,q}");
}

// Continuity cell of the equal-exponent hybrid table; nullopt marks the
// cells the table leaves open. Requires r1 = r2 = r, both p finite, B scale
// and r > -d min{1/p1, 1/p2}.
inline std::optional<bool> hybrid_table_continuity(const NamedSpace& src, const NamedSpace& tgt,
                                                   std::string& cell) {
    const ExtRational& r = src.r;
    if (r.sign() > 0) {
        cell = "r-positive";
        return src.s >= tgt.s;
    }
    if (r.sign() == 0) {
        if (tgt.q.is_inf()) {
            cell = "r-zero.q2-inf";
            return src.s >= tgt.s;
        }
        if (src.q.is_inf()) {
            cell = "r-zero.q1-inf";
            return src.s > tgt.s;
        }
        cell = "r-zero.finite-q";
        if (src.s > tgt.s) return true;
        if (src.s < tgt.s) return false;
        ExtRational coef = min(ExtRational(1), src.p / tgt.p);
        if (q_leq_scaled(src.q, coef, tgt.q)) return true;
        if (src.q > tgt.q) return false;
        return std::nullopt;
    }
    if (src.p >= tgt.p) {
        cell = "r-negative.p1-geq-p2";
        if (src.s > tgt.s) return true;
        if (src.s == tgt.s) return src.q <= tgt.q;
        return false;
    }
    cell = "r-negative.p1-lt-p2";
    ExtRational bound = r * (src.p / tgt.p - ExtRational(1));
    ExtRational diff = src.s - tgt.s;
    if (diff > bound) return true;
    if (diff < bound) return false;
    if (q_leq_scaled(src.q, src.p / tgt.p, tgt.q)) return true;
    if (src.q > tgt.q) return false;
    return std::nullopt;
}

// Hybrid-exponent queries: translate to the tau form and classify; for equal
// exponents on a domain the explicit continuity table double-checks the rule
// engine, and any definite disagreement is a rule-encoding bug.
inline Verdict classify_hybrid(const NamedSpace& src, const NamedSpace& tgt) {
    if (src.kind != NamedSpace::Kind::Hybrid || tgt.kind != NamedSpace::Kind::Hybrid)
        throw std::invalid_argument("classify_hybrid: hybrid endpoints required");
    EmbeddingQuery q{resolve_named(src), resolve_named(tgt)};
    Verdict v = classify(q);

    bool table_applies = src.r == tgt.r && src.scale == Scale::B && tgt.scale == Scale::B &&
                         src.setting == Setting::Domain && src.p.is_finite() &&
                         tgt.p.is_finite() &&
                         src.r > ExtRational(-src.d) * min(src.p.reciprocal(), tgt.p.reciprocal());
    if (table_applies) {
        std::string cell;
        std::optional<bool> table = hybrid_table_continuity(src, tgt, cell);
        const char* table_str = !table.has_value() ? "open" : (*table ? "yes" : "no");
        if (v.relation != Relation::Unknown && table.has_value() &&
            *table != is_continuous(v.relation))
            throw std::logic_error("classify_hybrid: rule engine contradicts the hybrid table");
        v.trace.push_back(rule_application(
            "hybrid.table", {{"cell", cell}, {"table_continuity", table_str}}));
    }
    return v;
}

}  // namespace morrey
