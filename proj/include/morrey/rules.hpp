#pragma once

// Catalog of the classification rules. Every verdict cites rules from this
// table by id; the statements are self-contained so a trace can be read
// without any external material. docs/rules.md mirrors this table.

#include <map>
#include <stdexcept>
#include <string>

namespace morrey {

inline const std::map<std::string, std::string>& rule_catalog() {
    static const std::map<std::string, std::string> table = {
        {"alias.collapse",
         "tau above the threshold 1/p, or on it with q = inf: the space equals the uniform class "
         "B^{s + d(tau - 1/p)}_{inf,inf}"},
        {"alias.f-boundary",
         "F-scale space with tau = 1/p and q < inf equals the B-scale space B^{s,1/q}_{q,q}"},
        {"gap.compact",
         "smoothness gap (s1-s2)/d strictly above the critical exponent: the embedding is compact"},
        {"gap.none",
         "smoothness gap (s1-s2)/d strictly below the critical exponent: no continuous embedding"},
        {"limit.target-large",
         "target in the large region: continuous exactly when (s1-s2)/d >= 1/p1-tau1-1/p2+tau2; "
         "equality is continuous but not compact"},
        {"limit.source-large",
         "source in the large region, target below it, limiting gap: continuous exactly when q2 = inf"},
        {"limit.classical.b",
         "tau1 = tau2 = 0, B scale, gap equal to max{1/p1-1/p2, 0}: continuous exactly when q1 <= q2"},
        {"limit.classical.f",
         "tau1 = tau2 = 0, F scale, gap equal to max{1/p1-1/p2, 0}: continuous when that maximum is "
         "positive, and otherwise exactly when q1 <= q2"},
        {"limit.b.jump",
         "B scale, limiting gap on the branch 1/p1-tau1-1/p2+tau2 > 0 with p1 tau1 < p2 tau2: "
         "continuous for every q1, q2"},
        {"limit.b.slope-q",
         "B scale, limiting gap on the branch 1/p1-tau1-1/p2+(p1/p2)tau1 > 0: continuous when "
         "q1 <= (p1/p2) q2"},
        {"limit.b.equal-s-q",
         "B scale, s1 = s2: continuous when q1 <= min{1, p1/p2} q2"},
        {"limit.b.q-necessary",
         "B scale, zero critical exponent, or exponent on the branch 1/p1-tau1-1/p2+(p1/p2)tau1 > 0: "
         "continuity forces q1 <= q2"},
        {"limit.f.interior.scales",
         "F scale, both below the threshold, 1/p1-1/p2 > tau1-tau2: continuous for every q1, q2"},
        {"limit.f.interior.q",
         "F scale, both below the threshold, 1/p1-1/p2 <= tau1-tau2: continuous when "
         "q1 <= min{1, p1/p2} q2"},
        {"limit.f.interior.q-necessary",
         "F scale, both below the threshold, 1/p1-1/p2 <= tau1-tau2: continuity forces q1 <= q2"},
        {"limit.f.boundary.both",
         "F scale, tau_i = 1/p_i with q_i < inf on both sides: continuous exactly when q1 <= q2"},
        {"limit.f.boundary.source",
         "F scale, source with tau1 = 1/p1 and q1 < inf, target below the threshold: continuous "
         "when q1 <= q2"},
        {"limit.f.boundary.source-necessary",
         "F scale, source with tau1 = 1/p1 and q1 < inf, target below the threshold: continuity "
         "forces q1 <= max{p2, q2}"},
        {"limit.f.boundary.target",
         "F scale, source below the threshold, target with tau2 = 1/p2 and q2 < inf: continuous "
         "for every q1, q2"},
        {"rn.b.target-large",
         "full space, B scale, target in the large region: continuous exactly when "
         "(s1-s2)/d >= 1/p1-tau1-1/p2+tau2"},
        {"rn.b.source-large",
         "full space, B scale, source in the large region: continuous exactly when tau2 >= 1/p2 and "
         "the gap is strictly above 1/p1-tau1-1/p2+tau2, or the gap equals it with the target in "
         "the large region"},
        {"rn.b.moderate.necessary",
         "full space, B scale, both on or below the threshold: continuity forces "
         "1/p1-tau1-1/p2+tau2 >= 0, tau1/p2 <= tau2/p1, gap >= 1/p1-tau1-1/p2+tau2, and q1 <= q2 "
         "when s1 = s2"},
        {"rn.b.moderate.sufficient",
         "full space, B scale, both on or below the threshold, necessary inequalities in force: "
         "continuous when the gap is strict; at equality, when (s1-s2)(tau1-tau2) != 0 with "
         "tau1/p2 < tau2/p1, or with tau1/p2 = tau2/p1 and tau1/q2 <= tau2/q1, or when "
         "(s1-s2)(tau1-tau2) = 0 with q1 <= q2; for s1 = s2 with p1 tau1 = p2 tau2 = 1 also p1 >= p2"},
        {"rn.b.slope-q-necessary",
         "full space, B scale, gap equal to 1/p1-tau1-1/p2+(p1/p2)tau1 > 0: continuity forces "
         "q1 <= q2"},
        {"rn.b.equal-tau",
         "full space, B scale, tau1 = tau2, gap equal to 1/p1-1/p2 > 0: continuous for every q1, q2"},
        {"rn.f.both-large",
         "full space, F scale, both in the large region: continuous exactly when "
         "(s1-s2)/d >= 1/p1-tau1-1/p2+tau2"},
        {"rn.f.target-large",
         "full space, F scale, target in the large region, source below it: continuous exactly "
         "when (s1-s2)/d >= 1/p1-tau1-1/p2+tau2"},
        {"rn.f.interior",
         "full space, F scale, both strictly below the threshold: continuous exactly when "
         "1/p1-tau1-1/p2+tau2 >= 0, tau1/p2 <= tau2/p1, and the gap reaches that expression or "
         "s1 = s2 with q1 <= q2"},
        {"rn.f.not-covered",
         "full space, F scale, region combination outside the known characterizations"},
        {"morrey.to-uniform",
         "Besov-Morrey source into a uniform B^{s2}_{inf,q2} target on a domain: continuous exactly "
         "when (s1-s2)/d > 1/u1, or equality holds with q1 <= q2; at equality the embedding is "
         "never compact"},
        {"morrey.from-uniform",
         "uniform B^{s1}_{inf,q1} source into a Besov-Morrey target on a domain: continuous exactly "
         "when s1 > s2, or s1 = s2 with q1 <= q2; at s1 = s2 the embedding is never compact"},
        {"morrey.compact-factor",
         "strict inequality in the Besov-Morrey criteria factors through a compact "
         "collapsed-threshold embedding, so the embedding is compact"},
        {"hybrid.table",
         "equal hybrid exponent r on a domain, B scale: r > 0 continuous iff s1 >= s2; r = 0 with "
         "q2 = inf iff s1 >= s2, with q1 = inf > q2 iff s1 > s2, both finite sufficient "
         "q1 <= min{1,p1/p2} q2 and necessary q1 <= q2 at s1 = s2; r < 0 with p1 >= p2 iff s1 > s2 "
         "or s1 = s2 with q1 <= q2, with p1 < p2 sufficient s1-s2 > r(p1/p2-1) or equality with "
         "q1 <= (p1/p2) q2, necessary that bound or equality with q1 <= q2"},
        {"mono.tau",
         "domain setting: lowering tau with s, p, q, d fixed embeds continuously"},
        {"elem.lift-s",
         "raising s with the other parameters fixed embeds continuously, compactly on domains"},
        {"elem.lift-q",
         "raising q with the other parameters fixed embeds continuously"},
        {"elem.sandwich",
         "the F space with summability q sits between the B spaces with summability min(p,q) and "
         "max(p,q)"},
        {"elem.collapse-embed",
         "every space embeds continuously into the uniform class with smoothness s + d(tau - 1/p)"},
    };
    return table;
}

inline const std::string& rule_statement(const std::string& rule_id) {
    const auto& table = rule_catalog();
    auto it = table.find(rule_id);
    if (it == table.end()) throw std::logic_error("unknown rule id: " + rule_id);
    return it->second;
}

}  // namespace morrey
