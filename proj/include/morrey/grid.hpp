#pragma once

// Parameter grid sweeps and the classifier consistency battery. The sweep
// enumerates source/target pairs sharing scale, dimension and setting; a
// stride keeps the evaluated count under the cap while touching every
// parameter regime. The battery cross-checks the rule engine against facts
// that hold independently of any single theorem: alias invariance, verdict
// transitivity, elementary embeddings, and monotonicity in the Morrey
// exponent.

#include "morrey/classify.hpp"
#include "morrey/format.hpp"
#include "morrey/parallel.hpp"
#include "morrey/spaces.hpp"

#include <cstdint>
#include <ostream>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace morrey {

struct GridSpec {
    std::vector<ExtRational> s_values;
    std::vector<ExtRational> p_values;
    std::vector<ExtRational> q_values;
    std::vector<ExtRational> tau_values;
    std::vector<Scale> scales{Scale::B, Scale::F};
    std::vector<Setting> settings{Setting::Domain, Setting::Rn};
    int d = 1;

    static GridSpec default_grid() {
        GridSpec g;
        for (int k = -4; k <= 4; ++k) g.s_values.push_back(ExtRational(k, 2));
        g.p_values = {ExtRational(1, 2), ExtRational(1), ExtRational(2),
                      ExtRational::infinity()};
        g.q_values = g.p_values;
        g.tau_values = {ExtRational(0), ExtRational(1, 4), ExtRational(1, 2),
                        ExtRational(1), ExtRational(2)};
        return g;
    }

    // Spaces for one scale/setting block (F skips p = inf).
    std::vector<SpaceParams> spaces(Scale scale, Setting setting) const {
        std::vector<SpaceParams> out;
        for (const auto& s : s_values)
            for (const auto& p : p_values) {
                if (scale == Scale::F && p.is_inf()) continue;
                for (const auto& q : q_values)
                    for (const auto& tau : tau_values)
                        out.push_back({scale, s, p, q, tau, d, setting});
            }
        return out;
    }

    std::size_t pair_count() const {
        std::size_t total = 0;
        for (Scale scale : scales)
            for (Setting setting : settings) {
                std::size_t n = spaces(scale, setting).size();
                total += n * n;
            }
        return total;
    }
};

struct AtlasRow {
    SpaceParams src;
    SpaceParams tgt;
    ExtRational gamma;
    std::string branch;
    Relation relation = Relation::Unknown;
    std::string rule_id;
    std::string citation;
};

struct BatteryCheck {
    std::string name;
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::size_t unresolved = 0;  // Unknown verdicts on embeddings known to hold
    std::vector<std::string> examples;

    bool pass() const { return violations == 0; }
};

struct AtlasReport {
    std::vector<AtlasRow> rows;
    std::map<std::string, std::size_t> relation_counts;
    std::size_t pairs_total = 0;
    std::size_t pairs_evaluated = 0;
    std::vector<BatteryCheck> battery;

    bool battery_pass() const {
        for (const auto& c : battery)
            if (!c.pass()) return false;
        return true;
    }
};

inline constexpr std::size_t kGridCap = 100000;

namespace detail {

inline void note_violation(BatteryCheck& check, const std::string& text) {
    ++check.violations;
    if (check.examples.size() < 8) check.examples.push_back(text);
}

inline std::string pair_str(const SpaceParams& a, const SpaceParams& b) {
    return a.str() + " -> " + b.str();
}

}  // namespace detail

// Verdicts may not contradict each other across aliased presentations:
// a definite relation on the original pair must match a definite relation
// on the fully normalized pair. Knowledge asymmetry (one side Unknown) is
// recorded but is not a violation.
inline BatteryCheck battery_coincidence(const std::vector<std::pair<SpaceParams, SpaceParams>>& pairs) {
    BatteryCheck check{"coincidence-invariance"};
    for (const auto& [src, tgt] : pairs) {
        SpaceParams nsrc = normalize_coincidence(src).back();
        SpaceParams ntgt = normalize_coincidence(tgt).back();
        if (nsrc == src && ntgt == tgt) continue;
        if (nsrc.scale != ntgt.scale) continue;  // alias left the pair cross-scale
        ++check.cases;
        Relation a = classify({src, tgt}).relation;
        Relation b = classify({nsrc, ntgt}).relation;
        if (a == b) continue;
        if (a == Relation::Unknown || b == Relation::Unknown) {
            ++check.unresolved;
            continue;
        }
        detail::note_violation(check, detail::pair_str(src, tgt) + " : " +
                                          to_string(a) + " vs aliased " + to_string(b));
    }
    return check;
}

// Two continuous legs can never compose to a NotContinuous verdict.
inline BatteryCheck battery_transitivity(const std::vector<SpaceParams>& spaces,
                                         std::size_t triples, std::uint64_t seed) {
    BatteryCheck check{"transitivity-guard"};
    if (spaces.size() < 3) return check;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, spaces.size() - 1);
    for (std::size_t k = 0; k < triples; ++k) {
        const SpaceParams& a = spaces[pick(rng)];
        const SpaceParams& b = spaces[pick(rng)];
        const SpaceParams& c = spaces[pick(rng)];
        ++check.cases;
        Relation ab = classify({a, b}).relation;
        if (!is_continuous(ab)) continue;
        Relation bc = classify({b, c}).relation;
        if (!is_continuous(bc)) continue;
        Relation ac = classify({a, c}).relation;
        if (ac == Relation::NotContinuous)
            detail::note_violation(check, detail::pair_str(a, c) + " : legs continuous via " +
                                              b.str() + " but composite not_continuous");
    }
    return check;
}

// Embeddings that hold by inspection of the quasi-norms: raising smoothness,
// raising the fine index q, and (on domains, where only small cubes matter)
// lowering the Morrey exponent. None may classify as NotContinuous; on
// domains they must come out definite.
inline BatteryCheck battery_elementary(const std::vector<SpaceParams>& spaces) {
    BatteryCheck check{"elementary-embeddings"};
    auto expect_continuous = [&](const SpaceParams& src, const SpaceParams& tgt,
                                 const char* what) {
        ++check.cases;
        Relation r = classify({src, tgt}).relation;
        if (r == Relation::NotContinuous) {
            detail::note_violation(check, std::string(what) + " " + detail::pair_str(src, tgt));
            return;
        }
        if (r == Relation::Unknown) {
            if (src.setting == Setting::Domain)
                detail::note_violation(check, std::string(what) + " unresolved on domain " +
                                                  detail::pair_str(src, tgt));
            else
                ++check.unresolved;
        }
    };

    for (const SpaceParams& sp : spaces) {
        SpaceParams lifted = sp;
        lifted.s = sp.s + ExtRational(1, 2);
        expect_continuous(lifted, sp, "smoothness-lift");

        SpaceParams finer = sp;
        if (!(sp.q == ExtRational::infinity())) {
            finer.q = ExtRational::infinity();
            expect_continuous(sp, finer, "q-lift");
        }
        expect_continuous(sp, sp, "identity");
    }
    return check;
}

// tau-monotonicity on domains: with s, p, q fixed, a larger Morrey exponent
// gives the stronger norm, so the embedding toward smaller tau holds.
inline BatteryCheck battery_tau_monotone(const std::vector<SpaceParams>& spaces) {
    BatteryCheck check{"tau-monotonicity"};
    for (const SpaceParams& sp : spaces) {
        if (sp.setting != Setting::Domain) continue;
        if (sp.tau.sign() == 0) continue;
        SpaceParams lowered = sp;
        lowered.tau = sp.tau / ExtRational(2);
        ++check.cases;
        Relation r = classify({sp, lowered}).relation;
        if (r == Relation::NotContinuous)
            detail::note_violation(check, "tau-lowering " + detail::pair_str(sp, lowered));
        else if (r == Relation::Unknown)
            detail::note_violation(check, "tau-lowering unresolved " + detail::pair_str(sp, lowered));
    }
    return check;
}

inline AtlasReport run_atlas(const GridSpec& grid, std::size_t stride, std::uint64_t seed = 20260822,
                             std::size_t transitivity_triples = 1000, unsigned jobs = 1) {
    if (stride == 0) throw std::invalid_argument("run_atlas: stride must be positive");
    AtlasReport report;
    report.pairs_total = grid.pair_count();
    if ((report.pairs_total + stride - 1) / stride > kGridCap)
        throw std::domain_error("run_atlas: grid exceeds the evaluation cap");

    std::vector<std::pair<SpaceParams, SpaceParams>> sampled;
    std::size_t index = 0;

    for (Scale scale : grid.scales)
        for (Setting setting : grid.settings) {
            std::vector<SpaceParams> spaces = grid.spaces(scale, setting);
            for (const SpaceParams& src : spaces)
                for (const SpaceParams& tgt : spaces) {
                    if (index++ % stride != 0) continue;
                    sampled.emplace_back(src, tgt);
                }
        }

    std::vector<Verdict> verdicts = parallel_map<Verdict>(
        sampled.size(), jobs,
        [&](std::size_t k) { return classify({sampled[k].first, sampled[k].second}); });

    for (std::size_t k = 0; k < sampled.size(); ++k) {
        const Verdict& v = verdicts[k];
        AtlasRow row;
        row.src = sampled[k].first;
        row.tgt = sampled[k].second;
        row.gamma = v.gamma_value.gamma;
        row.branch = to_string(v.gamma_value.branch);
        row.relation = v.relation;
        if (!v.trace.empty()) {
            row.rule_id = v.trace.back().rule_id;
            row.citation = v.trace.back().citation;
        } else {
            row.rule_id = v.unknown_detail;
        }
        ++report.relation_counts[to_string(v.relation)];
        report.rows.push_back(std::move(row));
    }
    report.pairs_evaluated = report.rows.size();

    // Battery: alias invariance on the sampled pairs, the rest on one
    // representative block per setting.
    report.battery.push_back(battery_coincidence(sampled));
    for (Setting setting : grid.settings) {
        std::vector<SpaceParams> b_spaces = grid.spaces(Scale::B, setting);
        report.battery.push_back(battery_transitivity(b_spaces, transitivity_triples, seed));
        report.battery.push_back(battery_elementary(b_spaces));
        if (setting == Setting::Domain) report.battery.push_back(battery_tau_monotone(b_spaces));
        std::vector<SpaceParams> f_spaces = grid.spaces(Scale::F, setting);
        report.battery.push_back(battery_elementary(f_spaces));
        if (setting == Setting::Domain) report.battery.push_back(battery_tau_monotone(f_spaces));
    }

    // Merge checks with equal names so the summary stays one line per check.
    std::vector<BatteryCheck> merged;
    for (const BatteryCheck& c : report.battery) {
        bool found = false;
        for (BatteryCheck& m : merged)
            if (m.name == c.name) {
                m.cases += c.cases;
                m.violations += c.violations;
                m.unresolved += c.unresolved;
                for (const auto& e : c.examples)
                    if (m.examples.size() < 8) m.examples.push_back(e);
                found = true;
            }
        if (!found) merged.push_back(c);
    }
    report.battery = std::move(merged);
    return report;
}

inline void atlas_csv(std::ostream& os, const AtlasReport& report) {
    csv_row(os, {"scale", "setting", "d", "src_s", "src_p", "src_q", "src_tau", "tgt_s", "tgt_p",
                 "tgt_q", "tgt_tau", "gamma", "branch", "relation", "rule_id", "citation"});
    for (const AtlasRow& r : report.rows)
        csv_row(os, {r.src.scale == Scale::B ? "B" : "F",
                     r.src.setting == Setting::Domain ? "domain" : "rn", std::to_string(r.src.d),
                     r.src.s.str(), r.src.p.str(), r.src.q.str(), r.src.tau.str(), r.tgt.s.str(),
                     r.tgt.p.str(), r.tgt.q.str(), r.tgt.tau.str(), r.gamma.str(), r.branch,
                     to_string(r.relation), r.rule_id, r.citation});
}

}  // namespace morrey
