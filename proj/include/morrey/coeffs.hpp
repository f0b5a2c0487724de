#pragma once

// Sparse wavelet coefficient sequences t = {t_{i,j,m}}. Index i ranges over
// the 2^d - 1 wavelet types at levels j >= 1; level 0 additionally carries
// the scaling block as i = 0. Entries are keyed by cube first so that all
// types living on one cube are adjacent during tree walks.

#include "morrey/dyadic.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace morrey {

struct CoeffKey {
    int j = 0;
    std::vector<std::int64_t> m;
    int i = 1;

    DyadicCube cube() const { return DyadicCube(j, m); }

    bool operator<(const CoeffKey& o) const {
        if (j != o.j) return j < o.j;
        if (m != o.m) return m < o.m;
        return i < o.i;
    }
    bool operator==(const CoeffKey& o) const {
        return j == o.j && m == o.m && i == o.i;
    }
};

class CoeffSeq {
public:
    explicit CoeffSeq(int d) : d_(d) {
        if (d < 1 || d > 20) throw std::invalid_argument("CoeffSeq: dimension out of range");
    }

    int dim() const { return d_; }

    // Zero values erase; invalid indices throw.
    void set(int i, int j, std::vector<std::int64_t> m, double value) {
        check_key(i, j, m);
        CoeffKey key{j, std::move(m), i};
        if (value == 0.0)
            entries_.erase(key);
        else
            entries_[key] = value;
    }

    double get(int i, int j, const std::vector<std::int64_t>& m) const {
        check_key(i, j, m);
        auto it = entries_.find(CoeffKey{j, m, i});
        return it == entries_.end() ? 0.0 : it->second;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    int finest_level() const {
        int finest = 0;
        for (const auto& [key, value] : entries_)
            if (key.j > finest) finest = key.j;
        return finest;
    }

    const std::map<CoeffKey, double>& entries() const { return entries_; }

    // Distinct cubes carrying at least one nonzero coefficient.
    std::vector<DyadicCube> support_cubes() const {
        std::vector<DyadicCube> out;
        for (const auto& [key, value] : entries_) {
            DyadicCube q = key.cube();
            if (out.empty() || !(out.back() == q)) out.push_back(std::move(q));
        }
        return out;
    }

private:
    void check_key(int i, int j, const std::vector<std::int64_t>& m) const {
        if (static_cast<int>(m.size()) != d_)
            throw std::invalid_argument("CoeffSeq: index dimension mismatch");
        if (j < 0) throw std::invalid_argument("CoeffSeq: negative level");
        const std::int64_t types = std::int64_t(1) << d_;
        if (i < 0 || i >= types)
            throw std::invalid_argument("CoeffSeq: wavelet type out of range");
        if (i == 0 && j != 0)
            throw std::invalid_argument("CoeffSeq: scaling block only lives at level 0");
    }

    int d_;
    std::map<CoeffKey, double> entries_;
};

}  // namespace morrey
