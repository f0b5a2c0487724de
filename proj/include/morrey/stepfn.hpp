#pragma once

// Step function sequences and their mixed quasi-norms.
//
// A StepFnSeq holds one step function g_j per level index j, each a finite
// combination of indicators of pairwise disjoint dyadic cells. The level
// index carries the weight 2^{js}; it is independent of the cell levels.
//
//   LqLp:  sup_P |P|^{-tau} { sum_{j >= max(j_P,0)} 2^{jsq} ||g_j||_{L_p(P)}^q }^{1/q}
//   LpLq:  sup_P |P|^{-tau} || { sum_{j >= max(j_P,0)} 2^{jsq} |g_j|^q }^{1/q} ||_{L_p(P)}
//
// Both suprema are evaluated exactly on the overlay tree of the cells: cube
// candidates are the overlay nodes, and inside a region where every g_j is
// constant the value depends on the candidate only through its level, so a
// single descent per gap settles all finer cubes.

#include "morrey/dyadic.hpp"
#include "morrey/rational.hpp"
#include "morrey/seqnorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace morrey {

enum class MixedOrder { LqLp, LpLq };

struct SmoothingParams {
    ExtRational D1;  // decay toward finer input levels
    ExtRational D2;  // decay toward coarser input levels

    void validate() const {
        if (!D1.is_finite() || !D2.is_finite() || D1.sign() <= 0 || D2.sign() <= 0)
            throw std::invalid_argument("SmoothingParams: decay rates must be positive and finite");
    }
};

class StepFnSeq {
public:
    StepFnSeq(int d, int levels) : d_(d), levels_(std::size_t(levels)) {
        if (d < 1 || d > 20) throw std::invalid_argument("StepFnSeq: dimension out of range");
        if (levels < 1) throw std::invalid_argument("StepFnSeq: need at least one level");
    }

    int dim() const { return d_; }
    int levels() const { return static_cast<int>(levels_.size()); }

    void set_piece(int j, const DyadicCube& cell, double value) {
        if (j < 0 || j >= levels()) throw std::invalid_argument("StepFnSeq: level out of range");
        if (cell.dim() != d_) throw std::invalid_argument("StepFnSeq: cell dimension mismatch");
        if (value == 0.0) return;
        auto& level = levels_[std::size_t(j)];
        for (const auto& [cube, coef] : level)
            if (contains(cube, cell) || contains(cell, cube))
                throw std::invalid_argument("StepFnSeq: overlapping pieces within a level");
        level.emplace(cell, value);
    }

    const std::map<DyadicCube, double>& pieces(int j) const { return levels_[std::size_t(j)]; }

    bool empty() const {
        for (const auto& level : levels_)
            if (!level.empty()) return false;
        return true;
    }

private:
    friend StepFnSeq smooth(const StepFnSeq&, const SmoothingParams&);

    int d_;
    std::vector<std::map<DyadicCube, double>> levels_;
};

namespace detail {

// Overlay tree of all cells of all levels: the cells themselves plus their
// ancestors per orthant, extended past the orthant join up to level 0 so
// that coarse candidates can pick up level-sum terms the join still cuts off.
struct Overlay {
    std::vector<DyadicCube> nodes;                 // sorted
    std::vector<std::vector<std::size_t>> kids;    // children inside the node set
    std::vector<std::size_t> roots;
    std::vector<std::map<int, double>> own;        // signed coefs of pieces sitting on the node
    std::vector<std::map<int, double>> stack_in;   // covering pieces strictly above the node
    std::vector<std::map<int, double>> stack_out;  // stack_in merged with own

    bool member(const DyadicCube& c) const {
        return std::binary_search(nodes.begin(), nodes.end(), c);
    }
    std::size_t position(const DyadicCube& c) const {
        return std::size_t(std::lower_bound(nodes.begin(), nodes.end(), c) - nodes.begin());
    }
};

inline Overlay build_overlay(const StepFnSeq& g) {
    Overlay ov;

    std::map<std::uint32_t, std::vector<DyadicCube>> by_orthant;
    for (int j = 0; j < g.levels(); ++j)
        for (const auto& [cell, coef] : g.pieces(j)) by_orthant[orthant_of(cell)].push_back(cell);
    if (by_orthant.empty()) return ov;

    std::vector<DyadicCube> nodes;
    for (const auto& [orthant, cells] : by_orthant) {
        DyadicCube top = cells.front();
        for (std::size_t k = 1; k < cells.size(); ++k) top = join(top, cells[k]);
        const int stop = std::min(0, top.j);
        for (const DyadicCube& c : cells) {
            nodes.push_back(c);
            for (const DyadicCube& a : ancestors(c, stop)) nodes.push_back(a);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    const std::size_t n = nodes.size();
    ov.nodes = std::move(nodes);
    ov.kids.resize(n);
    ov.own.resize(n);
    ov.stack_in.resize(n);
    ov.stack_out.resize(n);

    for (std::size_t k = 0; k < n; ++k) {
        DyadicCube par = parent(ov.nodes[k]);
        if (ov.member(par))
            ov.kids[ov.position(par)].push_back(k);
        else
            ov.roots.push_back(k);
    }

    for (int j = 0; j < g.levels(); ++j)
        for (const auto& [cell, coef] : g.pieces(j)) ov.own[ov.position(cell)][j] = coef;

    // Depth first stack propagation; the node set is a forest.
    std::vector<std::size_t> todo(ov.roots.rbegin(), ov.roots.rend());
    while (!todo.empty()) {
        std::size_t k = todo.back();
        todo.pop_back();
        ov.stack_out[k] = ov.stack_in[k];
        for (const auto& [j, coef] : ov.own[k]) ov.stack_out[k][j] = coef;
        for (std::size_t kid : ov.kids[k]) {
            ov.stack_in[kid] = ov.stack_out[k];
            todo.push_back(kid);
        }
    }
    return ov;
}

}  // namespace detail

inline NormResult mixed_norm(const StepFnSeq& g, const NormParams& np, MixedOrder order) {
    np.validate();
    if (g.dim() != np.d) throw std::invalid_argument("mixed_norm: dimension mismatch");
    NormResult out;
    if (g.empty()) return out;

    detail::Overlay ov = detail::build_overlay(g);
    const std::size_t n = ov.nodes.size();
    const int J = g.levels();
    const int d = np.d;

    const bool p_inf = np.p.is_inf();
    const bool q_inf = np.q.is_inf();
    const double pd = p_inf ? 0.0 : np.p.to_double();
    const double qd = q_inf ? 0.0 : np.q.to_double();
    const double sd = np.s.to_double();
    const double taud = np.tau.to_double();

    // Weighted magnitude of g_j on a constant region: 2^{js} |a_j|.
    auto weighted = [&](int j, double a) { return detail::pow2d(double(j) * sd) * std::abs(a); };

    // Suffix tables over the level index for every node's outgoing stack:
    // suffix[k][j0] aggregates the terms with j >= j0.
    std::vector<std::vector<double>> suffix(n, std::vector<double>(std::size_t(J) + 1, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> level_term(std::size_t(J), 0.0);
        for (const auto& [j, coef] : ov.stack_out[k]) {
            double w = weighted(j, coef);
            level_term[std::size_t(j)] = q_inf ? w : std::pow(w, qd);
        }
        for (int j = J - 1; j >= 0; --j)
            suffix[k][std::size_t(j)] =
                q_inf ? std::max(level_term[std::size_t(j)], suffix[k][std::size_t(j) + 1])
                      : level_term[std::size_t(j)] + suffix[k][std::size_t(j) + 1];
    }

    // Per-node mass tables for the LqLp order.
    std::vector<std::map<int, double>> mass(n);  // j -> sum |coef|^p |cell|, or sup |coef|
    if (order == MixedOrder::LqLp) {
        for (int j = 0; j < J; ++j)
            for (const auto& [cell, coef] : g.pieces(j)) {
                double contribution = p_inf
                                          ? std::abs(coef)
                                          : std::pow(std::abs(coef), pd) *
                                                detail::pow2d(-double(cell.j) * d);
                DyadicCube c = cell;
                while (true) {
                    if (ov.member(c)) {
                        double& slot = mass[ov.position(c)][j];
                        if (p_inf)
                            slot = std::max(slot, contribution);
                        else
                            slot += contribution;
                    }
                    DyadicCube par = parent(c);
                    if (!ov.member(par)) break;
                    c = par;
                }
            }
    }

    auto admit = [&](const DyadicCube& c) {
        return !np.restriction || contains(*np.restriction, c);
    };
    auto consider = [&](double v, const DyadicCube& c) {
        ++out.candidates_evaluated;
        if (!out.argmax_cube || v > out.value) {
            out.value = v;
            out.argmax_cube = c;
        }
    };

    // Candidate values on the overlay nodes.
    for (std::size_t k = 0; k < n; ++k) {
        const DyadicCube& P = ov.nodes[k];
        if (!admit(P)) continue;
        const int j0 = std::max(P.j, 0);
        const double wP = detail::pow2d(double(P.j) * d * taud);

        if (order == MixedOrder::LqLp) {
            double inner = 0.0;
            detail::KahanSum acc;
            for (int j = j0; j < J; ++j) {
                double block;
                auto it = mass[k].find(j);
                double inside = it == mass[k].end() ? 0.0 : it->second;
                auto cov = ov.stack_in[k].find(j);
                double cover = cov == ov.stack_in[k].end() ? 0.0 : std::abs(cov->second);
                if (p_inf) {
                    block = std::max(inside, cover);
                } else {
                    double mass_p = inside + std::pow(cover, pd) * detail::pow2d(-double(P.j) * d);
                    block = mass_p > 0.0 ? std::pow(mass_p, 1.0 / pd) : 0.0;
                }
                double term = detail::pow2d(double(j) * sd) * block;
                if (q_inf)
                    inner = std::max(inner, term);
                else if (term > 0.0)
                    acc.add(std::pow(term, qd));
            }
            if (!q_inf) inner = acc.value() > 0.0 ? std::pow(acc.value(), 1.0 / qd) : 0.0;
            consider(wP * inner, P);
        } else {
            // Flatten the integral over P: every point lies in the gap region
            // of exactly one overlay node below P.
            detail::KahanSum integral;
            double ess_sup = 0.0;
            std::vector<std::size_t> todo{k};
            while (!todo.empty()) {
                std::size_t node = todo.back();
                todo.pop_back();
                const DyadicCube& c = ov.nodes[node];
                double cell = detail::pow2d(-double(c.j) * d);
                double covered = double(ov.kids[node].size()) * detail::pow2d(-double(c.j + 1) * d);
                double s_val = suffix[node][std::size_t(std::min(j0, J))];
                if (cell > covered && s_val > 0.0) {
                    if (p_inf)
                        ess_sup = std::max(ess_sup, q_inf ? s_val : std::pow(s_val, 1.0 / qd));
                    else
                        integral.add((cell - covered) * std::pow(s_val, q_inf ? pd : pd / qd));
                }
                for (std::size_t kid : ov.kids[node]) todo.push_back(kid);
            }
            double v;
            if (p_inf)
                v = wP * ess_sup;
            else
                v = integral.value() > 0.0 ? wP * std::pow(integral.value(), 1.0 / pd) : 0.0;
            consider(v, P);
        }
    }

    // Descents into constant gaps. Inside a gap every g_j is the stack
    // constant, so the candidate value depends only on its level jp.
    const double gap_exp = d * (taud - (p_inf ? 0.0 : 1.0 / pd));
    for (std::size_t k = 0; k < n; ++k) {
        const DyadicCube& c = ov.nodes[k];
        bool has_gap = ov.kids[k].size() < (std::size_t(1) << d);
        if (!has_gap) continue;
        DyadicCube probe;  // representative gap cube, for restriction checks and reporting
        bool found = false;
        for (const DyadicCube& child : children(c)) {
            if (!ov.member(child)) {
                probe = child;
                found = true;
                break;
            }
        }
        if (!found) continue;
        int jp_lo = c.j + 1;
        if (np.restriction) {
            if (contains(*np.restriction, probe)) {
                // full range
            } else if (contains(probe, *np.restriction)) {
                probe = *np.restriction;
                jp_lo = np.restriction->j;
            } else {
                continue;
            }
        }
        for (int jp = jp_lo; jp < J; ++jp) {
            double s_val = suffix[k][std::size_t(std::max(jp, 0))];
            if (s_val <= 0.0) continue;
            double inner = q_inf ? s_val : std::pow(s_val, 1.0 / qd);
            double v = detail::pow2d(double(jp) * gap_exp) * inner;
            DyadicCube rep;  // corner descendant of the gap at level jp
            rep.j = jp;
            rep.m.resize(std::size_t(d));
            for (int axis = 0; axis < d; ++axis)
                rep.m[std::size_t(axis)] = probe.m[std::size_t(axis)] << (jp - probe.j);
            consider(v, rep);
        }
    }
    return out;
}

// G_j = sum_{v <= j} 2^{-(j-v) D2} g_v + sum_{v > j} 2^{-(v-j) D1} g_v,
// returned on the overlay partition so the pieces stay disjoint per level.
inline StepFnSeq smooth(const StepFnSeq& g, const SmoothingParams& sp) {
    sp.validate();
    StepFnSeq out(g.dim(), g.levels());
    if (g.empty()) return out;

    detail::Overlay ov = detail::build_overlay(g);
    const int J = g.levels();
    const double d1 = sp.D1.to_double();
    const double d2 = sp.D2.to_double();

    // Regions are disjoint by construction, so pieces go in directly.
    auto emit = [&](const DyadicCube& region, const std::map<int, double>& stack) {
        if (stack.empty()) return;
        for (int jout = 0; jout < J; ++jout) {
            double value = 0.0;
            for (const auto& [v, coef] : stack) {
                double decay = v <= jout ? detail::pow2d(-double(jout - v) * d2)
                                         : detail::pow2d(-double(v - jout) * d1);
                value += decay * coef;
            }
            if (value != 0.0) out.levels_[std::size_t(jout)].emplace(region, value);
        }
    };

    for (std::size_t k = 0; k < ov.nodes.size(); ++k) {
        if (ov.kids[k].empty()) {
            emit(ov.nodes[k], ov.stack_out[k]);
        } else {
            for (const DyadicCube& child : children(ov.nodes[k]))
                if (!ov.member(child)) emit(child, ov.stack_out[k]);
        }
    }
    return out;
}

}  // namespace morrey
