#pragma once

// Extremal coefficient families used to stress verdicts numerically.
//
// LevelDiagonal and UnitColumn fill the whole dyadic tree over the unit
// cube: every cube at level j carries the same coefficient 2^{-j w} gamma_j,
// with w chosen so the weighted blocks reduce to gamma_j itself. Their
// quasi-norms have closed forms in every Besov-type or Triebel-Lizorkin-type
// space, which is what makes experiments at J = 256 affordable; the explicit
// realization exists for small J to cross-check the norm engines.
//
// SparseHierarchical marks few cubes per level under a hierarchical cap, the
// natural test mass for Morrey weights with 0 < p tau < 1. Random draws a
// reproducible sparse sequence for property tests.

#include "morrey/coeffs.hpp"
#include "morrey/dyadic.hpp"
#include "morrey/rational.hpp"
#include "morrey/seqnorm.hpp"
#include "morrey/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace morrey {

enum class FamilyKind { LevelDiagonal, UnitColumn, SparseHierarchical, Random };

inline const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::LevelDiagonal: return "level_diagonal";
        case FamilyKind::UnitColumn: return "unit_column";
        case FamilyKind::SparseHierarchical: return "sparse_hierarchical";
        case FamilyKind::Random: return "random";
    }
    return "?";
}

struct Family {
    FamilyKind kind = FamilyKind::LevelDiagonal;
    int d = 1;
    int J = 8;                    // finest populated level
    ExtRational s_norm = 0;       // smoothness used in the coefficient scaling
    std::vector<double> gamma;    // per-level factors, size J + 1
    ExtRational mark_exponent;    // SparseHierarchical: p1 * tau1
    ExtRational p_src = 2;        // SparseHierarchical: source integrability
    ExtRational tau_src = 0;      // SparseHierarchical: source Morrey exponent
    double density = 0.5;         // Random
    std::uint64_t seed = 1;       // Random
};

inline std::vector<double> default_gamma(int J, const ExtRational& q2) {
    std::vector<double> g(std::size_t(J) + 1);
    const double e = q2.is_inf() ? 0.0 : 1.0 / q2.to_double();
    for (int j = 0; j <= J; ++j) g[std::size_t(j)] = std::pow(double(j + 1), -e);
    return g;
}

inline Family gen_level_diagonal(int d, int J, const ExtRational& s1,
                                 std::vector<double> gamma) {
    if (J < 0) throw std::invalid_argument("gen_level_diagonal: J must be >= 0");
    if (gamma.size() != std::size_t(J) + 1)
        throw std::invalid_argument("gen_level_diagonal: gamma needs one entry per level");
    Family f;
    f.kind = FamilyKind::LevelDiagonal;
    f.d = d;
    f.J = J;
    f.s_norm = s1;
    f.gamma = std::move(gamma);
    return f;
}

inline Family gen_level_diagonal(int d, int J, const ExtRational& s1, const ExtRational& q2) {
    return gen_level_diagonal(d, J, s1, default_gamma(J, q2));
}

inline Family gen_unit_column(int d, int J, const ExtRational& s2) {
    if (J < 0) throw std::invalid_argument("gen_unit_column: J must be >= 0");
    Family f;
    f.kind = FamilyKind::UnitColumn;
    f.d = d;
    f.J = J;
    f.s_norm = s2;
    f.gamma.assign(std::size_t(J) + 1, 1.0);
    return f;
}

inline Family gen_sparse_hierarchical(int d, int J, const ExtRational& s1,
                                      const ExtRational& p1, const ExtRational& tau1,
                                      std::vector<double> gamma) {
    if (J < 0) throw std::invalid_argument("gen_sparse_hierarchical: J must be >= 0");
    if (p1.is_inf() || tau1.sign() <= 0)
        throw std::invalid_argument("gen_sparse_hierarchical: finite p1 and tau1 > 0 required");
    ExtRational sigma = p1 * tau1;
    if (sigma.sign() <= 0 || !(sigma < ExtRational(1)))
        throw std::invalid_argument("gen_sparse_hierarchical: 0 < p1 tau1 < 1 required");
    if (gamma.size() != std::size_t(J) + 1)
        throw std::invalid_argument("gen_sparse_hierarchical: gamma needs one entry per level");
    Family f;
    f.kind = FamilyKind::SparseHierarchical;
    f.d = d;
    f.J = J;
    f.s_norm = s1;
    f.gamma = std::move(gamma);
    f.mark_exponent = sigma;
    f.p_src = p1;
    f.tau_src = tau1;
    return f;
}

inline Family gen_random(int d, int depth, double density, std::uint64_t seed) {
    if (depth < 0) throw std::invalid_argument("gen_random: depth must be >= 0");
    if (!(density >= 0.0 && density <= 1.0))
        throw std::invalid_argument("gen_random: density must lie in [0,1]");
    Family f;
    f.kind = FamilyKind::Random;
    f.d = d;
    f.J = depth;
    f.gamma.assign(std::size_t(depth) + 1, 1.0);
    f.density = density;
    f.seed = seed;
    return f;
}

// Marked cubes at one level of the hierarchical construction: a left to
// right greedy scan accepting a cube when every ancestor at relative depth k
// still holds fewer than floor(2^{d k sigma}) marks.
inline std::vector<std::vector<std::int64_t>> sparse_marks(int d, int level,
                                                           const ExtRational& sigma) {
    std::vector<std::vector<std::int64_t>> marks;
    if (level < 0) return marks;

    // floor(2^{d * rel_depth * sigma}); exponents here stay small, and the
    // value can only sit on an integer when the exponent itself is integral,
    // where exp2 is exact, so a relative nudge protects the floor.
    auto cap = [&](int rel_depth) -> std::int64_t {
        double e = (ExtRational(d * rel_depth) * sigma).to_double();
        return std::int64_t(std::floor(std::exp2(e) * (1.0 + 1e-12)));
    };

    std::map<DyadicCube, std::int64_t> counts;
    const std::int64_t total_cap = cap(level);
    std::vector<std::int64_t> m(std::size_t(d), 0);
    const std::int64_t side = std::int64_t(1) << level;
    while (true) {
        DyadicCube q(level, m);
        bool ok = true;
        for (int mu = level; mu >= 0 && ok; --mu) {
            DyadicCube a = ancestor_at(q, mu);
            auto it = counts.find(a);
            std::int64_t c = it == counts.end() ? 0 : it->second;
            if (c >= cap(level - mu)) ok = false;
        }
        if (ok) {
            marks.push_back(m);
            for (int mu = level; mu >= 0; --mu) ++counts[ancestor_at(q, mu)];
            if (std::int64_t(marks.size()) >= total_cap) break;
        }
        int axis = d - 1;
        while (axis >= 0 && ++m[std::size_t(axis)] >= side) {
            m[std::size_t(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return marks;
}

// Explicit realization. Guarded: the full-tree families grow like 2^{Jd}.
inline CoeffSeq realize(const Family& f) {
    CoeffSeq t(f.d);
    const double half = double(f.d) / 2.0;

    switch (f.kind) {
        case FamilyKind::LevelDiagonal:
        case FamilyKind::UnitColumn: {
            double total = 0.0;
            for (int j = 0; j <= f.J; ++j) total += std::exp2(double(j) * f.d);
            if (total > 200000.0)
                throw std::domain_error("realize: full tree too large, use the closed form");
            const double w = f.s_norm.to_double() + half;
            for (int j = 0; j <= f.J; ++j) {
                double value = std::exp2(-double(j) * w) * f.gamma[std::size_t(j)];
                if (value == 0.0) continue;
                std::vector<std::int64_t> m(std::size_t(f.d), 0);
                const std::int64_t side = std::int64_t(1) << j;
                while (true) {
                    t.set(1, j, m, value);
                    int axis = f.d - 1;
                    while (axis >= 0 && ++m[std::size_t(axis)] >= side) {
                        m[std::size_t(axis)] = 0;
                        --axis;
                    }
                    if (axis < 0) break;
                }
            }
            return t;
        }
        case FamilyKind::SparseHierarchical: {
            const double w = f.s_norm.to_double() + half -
                             double(f.d) / f.p_src.to_double() +
                             double(f.d) * f.tau_src.to_double();
            for (int j = 0; j <= f.J; ++j) {
                double value = std::exp2(-double(j) * w) * f.gamma[std::size_t(j)];
                if (value == 0.0) continue;
                for (auto& m : sparse_marks(f.d, j, f.mark_exponent)) t.set(1, j, m, value);
            }
            return t;
        }
        case FamilyKind::Random: {
            std::mt19937_64 rng(f.seed);
            auto unit = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
            const std::int64_t types = std::int64_t(1) << f.d;
            for (int j = 0; j <= f.J; ++j) {
                std::vector<std::int64_t> m(std::size_t(f.d), 0);
                const std::int64_t side = std::int64_t(1) << j;
                while (true) {
                    for (std::int64_t i = (j == 0 ? 0 : 1); i < types; ++i) {
                        double pick = unit();
                        double value = 2.0 * unit() - 1.0;
                        if (pick < f.density && value != 0.0)
                            t.set(int(i), j, m, value);
                    }
                    int axis = f.d - 1;
                    while (axis >= 0 && ++m[std::size_t(axis)] >= side) {
                        m[std::size_t(axis)] = 0;
                        --axis;
                    }
                    if (axis < 0) break;
                }
            }
            return t;
        }
    }
    throw std::logic_error("realize: unhandled family kind");
}

// Closed-form quasi-norm of the full-tree families in the space sp. The
// supremum runs over the chain cubes P = Q_{jP,0}; every position at a fixed
// level carries the same value, and coarser cubes than the unit cube are
// dominated by it.
inline double family_closed_norm(const Family& f, const SpaceParams& sp) {
    if (f.kind != FamilyKind::LevelDiagonal && f.kind != FamilyKind::UnitColumn)
        throw std::invalid_argument("family_closed_norm: closed form needs a full-tree family");
    if (sp.d != f.d) throw std::invalid_argument("family_closed_norm: dimension mismatch");
    sp.validate();

    const bool q_inf = sp.q.is_inf();
    const double qd = q_inf ? 0.0 : sp.q.to_double();
    const double delta = (sp.s - f.s_norm).to_double();
    const double outer_exp =
        (double(f.d) * (sp.tau - sp.p.reciprocal()).to_double());

    // suffix aggregation of (2^{j delta} gamma_j)^q
    std::vector<double> suffix(std::size_t(f.J) + 2, 0.0);
    for (int j = f.J; j >= 0; --j) {
        double term = std::exp2(double(j) * delta) * f.gamma[std::size_t(j)];
        suffix[std::size_t(j)] = q_inf ? std::max(term, suffix[std::size_t(j) + 1])
                                       : std::pow(term, qd) + suffix[std::size_t(j) + 1];
    }

    double best = 0.0;
    for (int jp = 0; jp <= f.J; ++jp) {
        double tail = suffix[std::size_t(jp)];
        if (tail <= 0.0) continue;
        double inner = q_inf ? tail : std::pow(tail, 1.0 / qd);
        best = std::max(best, std::exp2(double(jp) * outer_exp) * inner);
    }
    return best;
}

// Norm of a family in a space: closed form when available, the appropriate
// engine otherwise.
inline double family_norm(const Family& f, const SpaceParams& sp) {
    if (f.kind == FamilyKind::LevelDiagonal || f.kind == FamilyKind::UnitColumn)
        return family_closed_norm(f, sp);
    CoeffSeq t = realize(f);
    NormParams np;
    np.s = sp.s;
    np.tau = sp.tau;
    np.p = sp.p;
    np.q = sp.q;
    np.d = sp.d;
    return sp.scale == Scale::B ? besov_seq_norm(t, np).value : tl_seq_norm(t, np).value;
}

}  // namespace morrey
