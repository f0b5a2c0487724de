#pragma once

// Built-in self checks behind the `selftest` subcommand: oracle agreement
// for the norm engines, form equivalence for the gamma exponent, placement
// feasibility for the sparse family, the shipped scenarios, and rule table
// integrity. Each check is cheap; the heavyweight exhaustive versions live
// in the test suite.

#include "morrey/classify.hpp"
#include "morrey/experiment.hpp"
#include "morrey/families.hpp"
#include "morrey/format.hpp"
#include "morrey/gamma.hpp"
#include "morrey/grid.hpp"
#include "morrey/rules.hpp"
#include "morrey/seqnorm.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace morrey {

struct SelftestCase {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelftestReport {
    std::vector<SelftestCase> cases;

    bool pass() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : cases)
            if (!c.pass) ++n;
        return n;
    }
};

namespace detail {

inline void add_case(SelftestReport& report, const std::string& suite, const std::string& name,
                     bool pass, const std::string& detail = "") {
    report.cases.push_back({suite, name, pass, detail});
}

inline bool close_rel(double a, double b, double tol) {
    double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) <= tol * scale;
}

}  // namespace detail

// gamma: piecewise form against the max form on a deterministic sample, plus
// two frozen values.
inline void selftest_gamma(SelftestReport& report) {
    const std::vector<ExtRational> ps = {ExtRational(1, 2), ExtRational(1), ExtRational(2),
                                         ExtRational(3), ExtRational::infinity()};
    const std::vector<ExtRational> taus = {ExtRational(0), ExtRational(1, 8), ExtRational(1, 4),
                                           ExtRational(1, 2), ExtRational(1), ExtRational(2)};
    std::size_t checked = 0;
    bool ok = true;
    std::string detail;
    try {
        for (const auto& p1 : ps)
            for (const auto& t1 : taus)
                for (const auto& p2 : ps)
                    for (const auto& t2 : taus) {
                        gamma(p1, t1, p2, t2);
                        ++checked;
                    }
    } catch (const std::exception& ex) {
        ok = false;
        detail = ex.what();
    }
    detail::add_case(report, "gamma", "piecewise equals max form on " + std::to_string(checked) + " tuples",
                     ok, detail);

    GammaValue a = gamma(ExtRational(2), ExtRational(0), ExtRational(2), ExtRational(1));
    detail::add_case(report, "gamma", "frozen value (p1=2,tau1=0)->(p2=2,tau2=1)",
                     a.gamma == ExtRational(1), "gamma=" + a.gamma.str());
    GammaValue b = gamma(ExtRational(3), ExtRational(1, 4), ExtRational(2), ExtRational(1, 8));
    detail::add_case(report, "gamma", "frozen value (p1=3,tau1=1/4)->(p2=2,tau2=1/8)",
                     b.gamma == ExtRational(0), "gamma=" + b.gamma.str());
}

// norms: optimized evaluators against the brute-force oracle on a small
// deterministic family of sequences.
inline void selftest_norms(SelftestReport& report) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    std::vector<CoeffSeq> samples;
    {
        CoeffSeq t(1);
        t.set(1, 0, {0}, 1.0);
        samples.push_back(t);
    }
    {
        CoeffSeq t(1);
        t.set(1, 0, {0}, 1.0);
        t.set(1, 1, {0}, 0.5);
        t.set(1, 2, {3}, -0.25);
        samples.push_back(t);
    }
    {
        CoeffSeq t(1);
        t.set(1, 0, {-1}, 0.7);
        t.set(1, 1, {-2}, -0.3);
        t.set(1, 1, {1}, 0.9);
        samples.push_back(t);
    }
    {
        CoeffSeq t(2);
        t.set(1, 0, {0, 0}, 1.0);
        t.set(3, 1, {1, 0}, unif(rng));
        t.set(2, 1, {0, 1}, unif(rng));
        t.set(1, 2, {2, 3}, unif(rng));
        samples.push_back(t);
    }
    for (int rep = 0; rep < 4; ++rep) {
        CoeffSeq t(1);
        std::uniform_int_distribution<int> level(0, 3);
        for (int n = 0; n < 5; ++n) {
            int j = level(rng);
            std::uniform_int_distribution<std::int64_t> cell(-2, (std::int64_t(1) << j) + 1);
            t.set(j == 0 ? 0 : 1, j, {cell(rng)}, unif(rng));
        }
        if (t.empty()) t.set(1, 0, {0}, 1.0);
        samples.push_back(t);
    }

    const std::vector<NormParams> settings = {
        {ExtRational(0), ExtRational(0), ExtRational(1), ExtRational(1), 1},
        {ExtRational(1, 2), ExtRational(1, 4), ExtRational(2), ExtRational(3), 1},
        {ExtRational(-1), ExtRational(1, 2), ExtRational(3, 2), ExtRational::infinity(), 1},
        {ExtRational(0), ExtRational(1), ExtRational::infinity(), ExtRational(2), 1},
    };

    std::size_t checked = 0;
    bool ok = true;
    std::string detail;
    for (const CoeffSeq& t : samples) {
        for (NormParams np : settings) {
            np.d = t.dim();
            if (!np.p.is_inf()) {
                double fast = tl_seq_norm(t, np).value;
                double slow = brute_force_norm(t, np, Scale::F).value;
                if (!detail::close_rel(fast, slow, 1e-12)) {
                    ok = false;
                    detail = "tl mismatch " + fmt_double(fast) + " vs " + fmt_double(slow);
                }
                ++checked;
            }
            double fast = besov_seq_norm(t, np).value;
            double slow = brute_force_norm(t, np, Scale::B).value;
            if (!detail::close_rel(fast, slow, 1e-12)) {
                ok = false;
                detail = "besov mismatch " + fmt_double(fast) + " vs " + fmt_double(slow);
            }
            ++checked;
        }
    }
    detail::add_case(report, "norms", "optimized vs brute force on " + std::to_string(checked) + " cases",
                     ok, detail);
}

// families: closed forms against the realized engine at small depth.
inline void selftest_families(SelftestReport& report) {
    const std::vector<SpaceParams> spaces = {
        {Scale::B, 0, 2, 4, ExtRational(1, 4), 1, Setting::Domain},
        {Scale::B, 0, 2, 2, ExtRational(1, 4), 1, Setting::Domain},
        {Scale::B, ExtRational(1, 2), 2, 2, ExtRational(0), 1, Setting::Domain},
        {Scale::F, 0, 2, 3, ExtRational(1, 2), 1, Setting::Domain},
    };
    bool ok = true;
    std::string detail;
    std::size_t checked = 0;
    for (int J : {2, 4, 6}) {
        Family diag = gen_level_diagonal(1, J, ExtRational(0), default_gamma(J, ExtRational(2)));
        Family col = gen_unit_column(1, J, ExtRational(0));
        for (const Family& f : {diag, col}) {
            CoeffSeq t = realize(f);
            for (const SpaceParams& sp : spaces) {
                double closed = family_closed_norm(f, sp);
                NormParams np{sp.s, sp.tau, sp.p, sp.q, sp.d};
                double engine =
                    sp.scale == Scale::F ? tl_seq_norm(t, np).value : besov_seq_norm(t, np).value;
                if (!detail::close_rel(closed, engine, 1e-12)) {
                    ok = false;
                    detail = "J=" + std::to_string(J) + " closed " + fmt_double(closed) +
                             " vs engine " + fmt_double(engine);
                }
                ++checked;
            }
        }
    }
    detail::add_case(report, "families",
                     "closed form matches the norm engine on " + std::to_string(checked) + " cases", ok,
                     detail);
}

// placement: the sparse family's per-ancestor caps hold exhaustively at
// small depth.
inline void selftest_placement(SelftestReport& report) {
    bool ok = true;
    std::string detail;
    for (const ExtRational& sigma : {ExtRational(1, 4), ExtRational(1, 2)}) {
        for (int level = 1; level <= 6 && ok; ++level) {
            auto marks = sparse_marks(1, level, sigma);
            for (std::size_t a = 0; a < marks.size() && ok; ++a)
                for (int up = 1; up <= level; ++up) {
                    DyadicCube anc = ancestor_at(DyadicCube{level, marks[a]}, level - up);
                    std::size_t inside = 0;
                    for (const auto& m : marks)
                        if (contains(anc, DyadicCube{level, m})) ++inside;
                    double cap = std::exp2(double(up) * sigma.to_double());
                    if (double(inside) > cap * (1.0 + 1e-9)) {
                        ok = false;
                        detail = "cap breach at level " + std::to_string(level) + " sigma " + sigma.str();
                    }
                }
        }
    }
    detail::add_case(report, "placement", "sparse marks respect every ancestor cap", ok, detail);
}

// scenarios: every shipped scenario must be internally consistent.
inline void selftest_scenarios(SelftestReport& report) {
    for (const Scenario& sc : builtin_scenarios()) {
        RatioReport rr = ratio_experiment(sc, {8, 16, 32, 64});
        std::ostringstream detail;
        detail << "verdict " << to_string(rr.verdict) << ", alpha " << fmt_double(rr.fit.alpha);
        detail::add_case(report, "scenarios", sc.name, rr.fit.consistent, detail.str());
    }
}

// rules: every rule id the engine can emit must resolve in the supplied
// catalog, with the statement the trace carried. Production runs pass the
// real catalog; the negative test passes a corrupted copy.
inline void selftest_rules(SelftestReport& report,
                           const std::map<std::string, std::string>& catalog) {
    bool ok = true;
    std::string detail;

    for (const auto& [id, statement] : catalog)
        if (statement.empty()) {
            ok = false;
            detail = "rule table has an empty statement for: " + id;
        }

    GridSpec grid;
    grid.s_values = {ExtRational(-1), ExtRational(0), ExtRational(1, 2), ExtRational(1)};
    grid.p_values = {ExtRational(1), ExtRational(2), ExtRational::infinity()};
    grid.q_values = {ExtRational(1), ExtRational(2), ExtRational::infinity()};
    grid.tau_values = {ExtRational(0), ExtRational(1, 4), ExtRational(1, 2), ExtRational(1)};

    auto check_verdict = [&](const Verdict& v) {
        for (const RuleApplication& ra : v.trace) {
            auto it = catalog.find(ra.rule_id);
            if (it == catalog.end()) {
                ok = false;
                detail = "rule table is missing entry: " + ra.rule_id;
            } else if (it->second != ra.citation) {
                ok = false;
                detail = "rule table statement mismatch for: " + ra.rule_id;
            }
        }
        for (const std::string& id : v.sufficient_failed)
            if (!catalog.count(id)) {
                ok = false;
                detail = "rule table is missing entry: " + id;
            }
        for (const std::string& id : v.necessary_satisfied)
            if (!catalog.count(id)) {
                ok = false;
                detail = "rule table is missing entry: " + id;
            }
    };

    for (Scale scale : {Scale::B, Scale::F})
        for (Setting setting : {Setting::Domain, Setting::Rn}) {
            auto spaces = grid.spaces(scale, setting);
            for (std::size_t a = 0; a < spaces.size(); ++a)
                for (std::size_t b = a % 7; b < spaces.size(); b += 7)
                    check_verdict(classify({spaces[a], spaces[b]}));
        }

    NamedSpace nm;
    nm.kind = NamedSpace::Kind::BesovMorrey;
    nm.s = ExtRational(1);
    nm.p = ExtRational(2);
    nm.u = ExtRational(4);
    nm.q = ExtRational(2);
    NamedSpace uniform;
    uniform.kind = NamedSpace::Kind::BesovMorrey;
    uniform.s = ExtRational(0);
    uniform.p = ExtRational::infinity();
    uniform.u = ExtRational::infinity();
    uniform.q = ExtRational(2);
    check_verdict(classify_besov_morrey(nm, uniform));
    check_verdict(classify_besov_morrey(uniform, nm));

    NamedSpace h1;
    h1.kind = NamedSpace::Kind::Hybrid;
    h1.scale = Scale::B;
    h1.s = ExtRational(1, 2);
    h1.p = ExtRational(2);
    h1.q = ExtRational(2);
    h1.r = ExtRational(-1, 4);
    NamedSpace h2 = h1;
    h2.s = ExtRational(0);
    h2.q = ExtRational(3);
    check_verdict(classify_hybrid(h1, h2));

    detail::add_case(report, "rules", "every reachable citation resolves in the rule table", ok, detail);
}

inline SelftestReport run_selftests(const std::string& filter = "",
                                    const std::map<std::string, std::string>& catalog = rule_catalog()) {
    SelftestReport report;
    auto wants = [&](const std::string& suite) {
        return filter.empty() || suite.find(filter) != std::string::npos;
    };
    if (wants("gamma")) selftest_gamma(report);
    if (wants("norms")) selftest_norms(report);
    if (wants("families")) selftest_families(report);
    if (wants("placement")) selftest_placement(report);
    if (wants("scenarios")) selftest_scenarios(report);
    if (wants("rules")) selftest_rules(report, catalog);
    return report;
}

}  // namespace morrey
