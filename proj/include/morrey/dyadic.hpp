#pragma once

// Dyadic cube lattice. A cube is Q_{j,m} = 2^{-j}([0,1)^d + m); larger j
// means a finer cube. Negative j is allowed (side length > 1), which the
// norm suprema need when a candidate cube has to swallow several unit cells.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace morrey {

// Floor of v / 2^k, valid for negative v and for shifts past the word size.
inline std::int64_t floor_shift(std::int64_t v, int k) {
    if (k < 0) throw std::invalid_argument("floor_shift: negative shift");
    if (k >= 63) return v < 0 ? -1 : 0;
    return v >> k;  // arithmetic shift, exact floor division
}

struct DyadicCube {
    int j = 0;
    std::vector<std::int64_t> m;

    DyadicCube() = default;
    DyadicCube(int level, std::vector<std::int64_t> index)
        : j(level), m(std::move(index)) {}

    int dim() const { return static_cast<int>(m.size()); }

    bool operator==(const DyadicCube& o) const { return j == o.j && m == o.m; }
    bool operator!=(const DyadicCube& o) const { return !(*this == o); }
    bool operator<(const DyadicCube& o) const {
        if (j != o.j) return j < o.j;
        return m < o.m;
    }

    std::string str() const {
        std::string s = "Q{" + std::to_string(j) + ",(";
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (k) s += ',';
            s += std::to_string(m[k]);
        }
        return s + ")}";
    }
};

// Ancestor of Q at level `level` <= Q.j (identity when equal).
inline DyadicCube ancestor_at(const DyadicCube& q, int level) {
    if (level > q.j) throw std::invalid_argument("ancestor_at: level finer than cube");
    DyadicCube a;
    a.j = level;
    a.m.resize(q.m.size());
    for (std::size_t k = 0; k < q.m.size(); ++k)
        a.m[k] = floor_shift(q.m[k], q.j - level);
    return a;
}

inline DyadicCube parent(const DyadicCube& q) { return ancestor_at(q, q.j - 1); }

// True when Q is contained in P (equality counts).
inline bool contains(const DyadicCube& p, const DyadicCube& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("contains: dimension mismatch");
    if (q.j < p.j) return false;
    for (std::size_t k = 0; k < p.m.size(); ++k)
        if (floor_shift(q.m[k], q.j - p.j) != p.m[k]) return false;
    return true;
}

inline bool disjoint(const DyadicCube& p, const DyadicCube& q) {
    return !contains(p, q) && !contains(q, p);
}

// Strict ancestors of Q from level Q.j - 1 down to `down_to`, coarsest last.
inline std::vector<DyadicCube> ancestors(const DyadicCube& q, int down_to) {
    std::vector<DyadicCube> out;
    for (int level = q.j - 1; level >= down_to; --level)
        out.push_back(ancestor_at(q, level));
    return out;
}

// The 2^d children one level finer.
inline std::vector<DyadicCube> children(const DyadicCube& q) {
    const int d = q.dim();
    std::vector<DyadicCube> out;
    out.reserve(std::size_t(1) << d);
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << d); ++bits) {
        DyadicCube c;
        c.j = q.j + 1;
        c.m.resize(d);
        for (int k = 0; k < d; ++k)
            c.m[k] = 2 * q.m[k] + ((bits >> k) & 1u);
        out.push_back(std::move(c));
    }
    return out;
}

// Smallest dyadic cube containing both (they must share an orthant signature,
// otherwise no dyadic cube contains the pair and the call throws).
inline DyadicCube join(DyadicCube a, DyadicCube b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("join: dimension mismatch");
    if (a.j > b.j) a = ancestor_at(a, b.j);
    if (b.j > a.j) b = ancestor_at(b, a.j);
    for (std::size_t k = 0; k < a.m.size(); ++k)
        if ((a.m[k] < 0) != (b.m[k] < 0))
            throw std::invalid_argument("join: cubes lie in different orthants");
    while (a.m != b.m) {
        a = parent(a);
        b = parent(b);
    }
    return a;
}

// Orthant signature: bit k set when the cube sits on the negative side of
// axis k. Stable under taking ancestors.
inline std::uint32_t orthant_of(const DyadicCube& q) {
    std::uint32_t bits = 0;
    for (std::size_t k = 0; k < q.m.size(); ++k)
        if (q.m[k] < 0) bits |= (1u << k);
    return bits;
}

}  // namespace morrey
