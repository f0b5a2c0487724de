#pragma once

// Sequence-space quasi-norms on wavelet coefficients.
//
// Besov form, for a dyadic cube P with j_P its level:
//
//   sup_P |P|^{-tau} { sum_{j >= max(j_P,0)} 2^{j(s+d/2-d/p)q}
//                      sum_i [ sum_{m: Q_{j,m} in P} |t_{i,j,m}|^p ]^{q/p} }^{1/q}
//
// Triebel-Lizorkin form:
//
//   sup_P |P|^{-tau} { int_P [ sum_{j >= max(j_P,0)} 2^{j(s+d/2)q}
//                      sum_i sum_m |t_{i,j,m}|^q chi_{Q_{j,m}}(x) ]^{p/q} dx }^{1/p}
//
// When p or q is infinite the corresponding sum becomes a supremum. The
// integrand is piecewise constant on the cells cut out by the support cubes,
// so the integral is walked on that tree with one term per cell class, never
// by splitting P into uniformly fine cells.

#include "morrey/candidates.hpp"
#include "morrey/coeffs.hpp"
#include "morrey/dyadic.hpp"
#include "morrey/rational.hpp"
#include "morrey/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace morrey {

struct NormParams {
    ExtRational s;
    ExtRational tau;
    ExtRational p;
    ExtRational q;
    int d = 1;
    std::optional<DyadicCube> restriction;  // outer sup over P inside this cube only

    void validate() const {
        if (d < 1) throw std::invalid_argument("NormParams: dimension must be positive");
        if (!s.is_finite()) throw std::invalid_argument("NormParams: s must be finite");
        if (!tau.is_finite() || tau.sign() < 0)
            throw std::invalid_argument("NormParams: tau must be finite and nonnegative");
        if (p.sign() <= 0 || q.sign() <= 0)
            throw std::invalid_argument("NormParams: p and q must be positive");
        if (restriction) {
            if (restriction->dim() != d)
                throw std::invalid_argument("NormParams: restriction dimension mismatch");
            if (restriction->j > 0)
                throw std::invalid_argument("NormParams: restriction cube must have level <= 0");
        }
    }
};

struct NormResult {
    double value = 0.0;
    std::optional<DyadicCube> argmax_cube;
    std::size_t candidates_evaluated = 0;
};

// Constant in ||x + y|| <= C(||x|| + ||y||) for the r-triangle inequality
// with r = min(p, q, 1).
inline double quasi_triangle_constant(const ExtRational& p, const ExtRational& q) {
    ExtRational r = min(min(p, q), ExtRational(1));
    ExtRational e = max(r.reciprocal() - ExtRational(1), ExtRational(0)) + ExtRational(1);
    return std::exp2(e.to_double());
}

namespace detail {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

inline double pow2d(double e) { return std::exp2(e); }

// |P|^{-tau} = 2^{j_P * d * tau}
inline double morrey_weight(const DyadicCube& p, int d, const ExtRational& tau) {
    return pow2d(double(p.j) * d * tau.to_double());
}

struct LevelType {
    int j = 0;
    int i = 0;
    bool operator<(const LevelType& o) const {
        if (j != o.j) return j < o.j;
        return i < o.i;
    }
};

// Per-candidate accumulator for the Besov form: p-th power sums (or sups
// when p is infinite) of the coefficients under the candidate, keyed by
// level and wavelet type.
struct BesovBuckets {
    std::map<LevelType, KahanSum> pow_sums;
    std::map<LevelType, double> sups;
};

inline double besov_value(const BesovBuckets& b, const DyadicCube& P,
                          const NormParams& np) {
    const bool p_inf = np.p.is_inf();
    const bool q_inf = np.q.is_inf();
    const double pd = p_inf ? 0.0 : np.p.to_double();
    const double qd = q_inf ? 0.0 : np.q.to_double();
    const double level_exp =
        (np.s + ExtRational(np.d, 2) - ExtRational(np.d) * np.p.reciprocal()).to_double();

    auto block_of = [&](const LevelType& key, double raw) {
        double block = p_inf ? raw : std::pow(raw, 1.0 / pd);
        return pow2d(double(key.j) * level_exp) * block;
    };

    double inner;
    if (q_inf) {
        inner = 0.0;
        if (p_inf) {
            for (const auto& [key, raw] : b.sups) inner = std::max(inner, block_of(key, raw));
        } else {
            for (const auto& [key, raw] : b.pow_sums)
                inner = std::max(inner, block_of(key, raw.value()));
        }
    } else {
        KahanSum acc;
        if (p_inf) {
            for (const auto& [key, raw] : b.sups) acc.add(std::pow(block_of(key, raw), qd));
        } else {
            for (const auto& [key, raw] : b.pow_sums)
                acc.add(std::pow(block_of(key, raw.value()), qd));
        }
        inner = acc.value() > 0.0 ? std::pow(acc.value(), 1.0 / qd) : 0.0;
    }
    return morrey_weight(P, np.d, np.tau) * inner;
}

// Certificate bound handed to the candidate enumeration: crude but safe
// upper estimate of the unweighted inner bracket.
inline double crude_inner_bound(const CoeffSeq& t, const NormParams& np) {
    if (t.empty()) return 0.0;
    const double level_exp =
        (np.s + ExtRational(np.d, 2) - ExtRational(np.d) * np.p.reciprocal()).to_double();
    double peak = 0.0;
    for (const auto& [key, value] : t.entries())
        peak = std::max(peak, pow2d(double(key.j) * level_exp) * std::abs(value));
    ExtRational r = min(min(np.p, np.q), ExtRational(1));
    double count_exp = r.reciprocal().to_double();
    return std::pow(double(t.size()), count_exp) * peak;
}

struct CandidateIndex {
    std::vector<DyadicCube> cubes;  // sorted
    int stop_level = 0;

    bool member(const DyadicCube& c) const {
        return std::binary_search(cubes.begin(), cubes.end(), c);
    }
    std::size_t position(const DyadicCube& c) const {
        return std::size_t(std::lower_bound(cubes.begin(), cubes.end(), c) - cubes.begin());
    }
};

inline CandidateIndex build_candidates(const CoeffSeq& t, const NormParams& np) {
    CandidateSet cs = candidate_cubes(t, np.tau, crude_inner_bound(t, np));
    CandidateIndex idx;
    idx.stop_level = cs.stop_level;
    if (np.restriction)
        idx.cubes = clip_candidates(cs.cubes, *np.restriction);
    else
        idx.cubes = std::move(cs.cubes);
    return idx;
}

}  // namespace detail

inline NormResult besov_seq_norm(const CoeffSeq& t, const NormParams& np) {
    np.validate();
    if (t.dim() != np.d) throw std::invalid_argument("besov_seq_norm: dimension mismatch");
    NormResult out;
    if (t.empty()) return out;

    detail::CandidateIndex idx = detail::build_candidates(t, np);
    if (idx.cubes.empty()) return out;

    const bool p_inf = np.p.is_inf();
    const double pd = p_inf ? 0.0 : np.p.to_double();

    std::vector<detail::BesovBuckets> buckets(idx.cubes.size());
    for (const auto& [key, value] : t.entries()) {
        const double mag = std::abs(value);
        DyadicCube c = key.cube();
        for (int level = key.j; level >= idx.stop_level; --level) {
            if (level < key.j) c = parent(c);
            if (!idx.member(c)) continue;
            detail::BesovBuckets& b = buckets[idx.position(c)];
            detail::LevelType lt{key.j, key.i};
            if (p_inf) {
                double& s = b.sups[lt];
                s = std::max(s, mag);
            } else {
                b.pow_sums[lt].add(std::pow(mag, pd));
            }
        }
    }

    for (std::size_t k = 0; k < idx.cubes.size(); ++k) {
        double v = detail::besov_value(buckets[k], idx.cubes[k], np);
        ++out.candidates_evaluated;
        if (!out.argmax_cube || v > out.value) {
            out.value = v;
            out.argmax_cube = idx.cubes[k];
        }
    }
    return out;
}

inline NormResult tl_seq_norm(const CoeffSeq& t, const NormParams& np) {
    np.validate();
    if (np.p.is_inf())
        throw std::invalid_argument("tl_seq_norm: p must be finite");
    if (t.dim() != np.d) throw std::invalid_argument("tl_seq_norm: dimension mismatch");
    NormResult out;
    if (t.empty()) return out;

    detail::CandidateIndex idx = detail::build_candidates(t, np);
    if (idx.cubes.empty()) return out;

    const bool q_inf = np.q.is_inf();
    const double pd = np.p.to_double();
    const double qd = q_inf ? 0.0 : np.q.to_double();
    const double level_exp = (np.s + ExtRational(np.d, 2)).to_double();

    // Per-cube payload: the contribution of the coefficients sitting exactly
    // on that cube to the integrand.
    std::vector<double> payload(idx.cubes.size(), 0.0);
    for (const auto& [key, value] : t.entries()) {
        DyadicCube c = key.cube();
        if (!idx.member(c)) continue;
        double scaled = detail::pow2d(double(key.j) * level_exp) * std::abs(value);
        double& slot = payload[idx.position(c)];
        if (q_inf)
            slot = std::max(slot, scaled);
        else
            slot += std::pow(scaled, qd);
    }

    // Children adjacency inside the candidate set; chains are contiguous in
    // level, so a candidate's parent is a candidate unless it tops its chain.
    std::vector<std::vector<std::size_t>> kids(idx.cubes.size());
    for (std::size_t k = 0; k < idx.cubes.size(); ++k) {
        const DyadicCube& c = idx.cubes[k];
        if (c.j <= idx.stop_level) continue;
        DyadicCube par = parent(c);
        if (idx.member(par)) kids[idx.position(par)].push_back(k);
    }

    const double ld = double(np.d);
    // Walks the support tree below node k; `acc` carries the integrand value
    // inherited from the chain above. Returns the integral over cube k.
    auto walk = [&](auto&& self, std::size_t k, double acc) -> double {
        const DyadicCube& c = idx.cubes[k];
        double here = q_inf ? std::max(acc, payload[k]) : acc + payload[k];
        double cell = detail::pow2d(-double(c.j) * ld);
        double covered = double(kids[k].size()) * detail::pow2d(-double(c.j + 1) * ld);
        detail::KahanSum integral;
        if (here > 0.0 && cell > covered)
            integral.add((cell - covered) * std::pow(here, q_inf ? pd : pd / qd));
        for (std::size_t kid : kids[k]) integral.add(self(self, kid, here));
        return integral.value();
    };

    for (std::size_t k = 0; k < idx.cubes.size(); ++k) {
        double integral = walk(walk, k, 0.0);
        double v = integral > 0.0
                       ? detail::morrey_weight(idx.cubes[k], np.d, np.tau) *
                             std::pow(integral, 1.0 / pd)
                       : 0.0;
        ++out.candidates_evaluated;
        if (!out.argmax_cube || v > out.value) {
            out.value = v;
            out.argmax_cube = idx.cubes[k];
        }
    }
    return out;
}

// Reference evaluation straight from the definitions: enumerates every cube
// from level_floor up to the finest support level that meets the support
// bounding box, with a hard budget so misuse fails loudly instead of
// silently crawling.
inline NormResult brute_force_norm(const CoeffSeq& t, const NormParams& np, Scale scale,
                                   int level_floor = -8) {
    np.validate();
    if (scale == Scale::F && np.p.is_inf())
        throw std::invalid_argument("brute_force_norm: F-scale needs finite p");
    if (t.dim() != np.d) throw std::invalid_argument("brute_force_norm: dimension mismatch");
    NormResult out;
    if (t.empty()) return out;

    const int d = np.d;
    const int finest = t.finest_level();
    if (level_floor > finest)
        throw std::invalid_argument("brute_force_norm: floor finer than support");

    std::vector<DyadicCube> support = t.support_cubes();
    std::vector<std::int64_t> lo(d, 0), hi(d, 0);
    bool first = true;
    for (const DyadicCube& q : support) {
        for (int k = 0; k < d; ++k) {
            std::int64_t a = q.m[k] << (finest - q.j);
            std::int64_t b = ((q.m[k] + 1) << (finest - q.j)) - 1;
            if (first) {
                lo[k] = a;
                hi[k] = b;
            } else {
                lo[k] = std::min(lo[k], a);
                hi[k] = std::max(hi[k], b);
            }
        }
        first = false;
    }

    constexpr std::size_t kBudget = 10000;
    std::vector<DyadicCube> cubes;
    for (int level = level_floor; level <= finest; ++level) {
        std::vector<std::int64_t> rlo(d), rhi(d);
        std::size_t count = 1;
        for (int k = 0; k < d; ++k) {
            rlo[k] = floor_shift(lo[k], finest - level);
            rhi[k] = floor_shift(hi[k], finest - level);
            count *= std::size_t(rhi[k] - rlo[k] + 1);
        }
        if (cubes.size() + count > kBudget)
            throw std::domain_error("brute_force_norm: cube budget exceeded");
        std::vector<std::int64_t> m = rlo;
        while (true) {
            cubes.emplace_back(level, m);
            int axis = 0;
            while (axis < d && ++m[axis] > rhi[axis]) {
                m[axis] = rlo[axis];
                ++axis;
            }
            if (axis == d) break;
        }
    }
    if (np.restriction) {
        std::vector<DyadicCube> kept;
        for (const DyadicCube& c : cubes)
            if (contains(*np.restriction, c)) kept.push_back(c);
        cubes = std::move(kept);
    }

    const bool p_inf = np.p.is_inf();
    const bool q_inf = np.q.is_inf();
    const double pd = p_inf ? 0.0 : np.p.to_double();
    const double qd = q_inf ? 0.0 : np.q.to_double();

    // Cells for the F-scale integral: the finest-level grid inside the
    // level-0 ancestors of the support.
    std::vector<DyadicCube> cells;
    if (scale == Scale::F) {
        std::vector<DyadicCube> units;
        for (const DyadicCube& q : support) units.push_back(ancestor_at(q, 0));
        std::sort(units.begin(), units.end());
        units.erase(std::unique(units.begin(), units.end()), units.end());
        for (const DyadicCube& u : units) {
            std::vector<std::int64_t> m(d);
            for (int k = 0; k < d; ++k) m[k] = u.m[k] << finest;
            std::vector<std::int64_t> base = m;
            while (true) {
                cells.emplace_back(finest, m);
                int axis = 0;
                while (axis < d && ++m[axis] - base[axis] >= (std::int64_t(1) << finest)) {
                    m[axis] = base[axis];
                    ++axis;
                }
                if (axis == d) break;
            }
        }
    }

    for (const DyadicCube& P : cubes) {
        const int j0 = std::max(P.j, 0);
        double v = 0.0;
        if (scale == Scale::B) {
            const double level_exp =
                (np.s + ExtRational(d, 2) - ExtRational(d) * np.p.reciprocal()).to_double();
            std::map<detail::LevelType, double> blocks;
            for (const auto& [key, value] : t.entries()) {
                if (key.j < j0 || !contains(P, key.cube())) continue;
                double& slot = blocks[detail::LevelType{key.j, key.i}];
                if (p_inf)
                    slot = std::max(slot, std::abs(value));
                else
                    slot += std::pow(std::abs(value), pd);
            }
            double inner = 0.0;
            for (const auto& [lt, raw] : blocks) {
                double block = p_inf ? raw : std::pow(raw, 1.0 / pd);
                double term = detail::pow2d(double(lt.j) * level_exp) * block;
                if (q_inf)
                    inner = std::max(inner, term);
                else
                    inner += std::pow(term, qd);
            }
            if (!q_inf && inner > 0.0) inner = std::pow(inner, 1.0 / qd);
            v = detail::morrey_weight(P, d, np.tau) * inner;
        } else {
            const double level_exp = (np.s + ExtRational(d, 2)).to_double();
            double integral = 0.0;
            for (const DyadicCube& cell : cells) {
                if (!contains(P, cell)) continue;
                double s_val = 0.0;
                for (const auto& [key, value] : t.entries()) {
                    if (key.j < j0) continue;
                    DyadicCube qc = key.cube();
                    if (!contains(P, qc) || !contains(qc, cell)) continue;
                    double scaled = detail::pow2d(double(key.j) * level_exp) * std::abs(value);
                    if (q_inf)
                        s_val = std::max(s_val, scaled);
                    else
                        s_val += std::pow(scaled, qd);
                }
                if (s_val > 0.0)
                    integral += detail::pow2d(-double(finest) * d) *
                                std::pow(s_val, q_inf ? pd : pd / qd);
            }
            v = integral > 0.0 ? detail::morrey_weight(P, d, np.tau) *
                                     std::pow(integral, 1.0 / pd)
                               : 0.0;
        }
        ++out.candidates_evaluated;
        if (!out.argmax_cube || v > out.value) {
            out.value = v;
            out.argmax_cube = P;
        }
    }
    return out;
}

}  // namespace morrey
