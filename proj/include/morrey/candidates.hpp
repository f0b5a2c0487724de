#pragma once

// Candidate cubes for the outer supremum of the sequence quasi-norms.
//
// Any cube P with a nonzero functional value contains a support cube, hence
// is an ancestor-or-self of one. Per orthant, every cube strictly coarser
// than the join of the orthant's support is dominated by that join: it sees
// the same coefficient set and the same level sum, with a Morrey weight
// |P|^{-tau} that is no larger. The enumeration therefore walks each support
// chain up to its orthant join and stops there.

#include "morrey/coeffs.hpp"
#include "morrey/dyadic.hpp"
#include "morrey/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace morrey {

struct CandidateSet {
    std::vector<DyadicCube> cubes;  // sorted, duplicate free
    int stop_level = 0;             // coarsest level enumerated
    double tail_bound = 0.0;        // bound on the value of any coarser cube
};

inline CandidateSet candidate_cubes(const CoeffSeq& t, const ExtRational& tau,
                                    double total_bound) {
    CandidateSet out;
    if (t.empty()) return out;

    std::map<std::uint32_t, std::vector<DyadicCube>> by_orthant;
    for (const DyadicCube& q : t.support_cubes())
        by_orthant[orthant_of(q)].push_back(q);

    std::vector<DyadicCube> cubes;
    int stop_level = t.finest_level();
    for (const auto& [orthant, support] : by_orthant) {
        DyadicCube top = support.front();
        for (std::size_t k = 1; k < support.size(); ++k) top = join(top, support[k]);
        for (const DyadicCube& q : support) {
            cubes.push_back(q);
            for (const DyadicCube& a : ancestors(q, top.j)) cubes.push_back(a);
        }
        stop_level = std::min(stop_level, top.j);
    }
    std::sort(cubes.begin(), cubes.end());
    cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());

    out.cubes = std::move(cubes);
    out.stop_level = stop_level;
    const double weight =
        std::exp2(double(stop_level) * t.dim() * tau.to_double());
    out.tail_bound = weight * total_bound;
    return out;
}

// Keep only candidates inside the restriction cube.
inline std::vector<DyadicCube> clip_candidates(const std::vector<DyadicCube>& cubes,
                                               const DyadicCube& restriction) {
    std::vector<DyadicCube> out;
    for (const DyadicCube& p : cubes)
        if (contains(restriction, p)) out.push_back(p);
    return out;
}

}  // namespace morrey
