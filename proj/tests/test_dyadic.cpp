// Dyadic lattice algebra, coefficient storage, and completeness of the
// candidate-cube enumeration used by the norm suprema.

#include "morrey/candidates.hpp"
#include "morrey/coeffs.hpp"
#include "morrey/dyadic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace morrey;

namespace {

DyadicCube cube(int j, std::vector<std::int64_t> m) { return DyadicCube{j, std::move(m)}; }

}  // namespace

TEST_CASE("containment by integer shift") {
    CHECK(contains(cube(0, {0}), cube(2, {3})));
    CHECK(contains(cube(0, {0, 0}), cube(2, {3, 0})));
    CHECK_FALSE(contains(cube(1, {0}), cube(0, {0})));
    // [-2, 0) contains [-1, 0): floor(-1 / 2) = -1
    CHECK(contains(cube(-1, {-1}), cube(0, {-1})));
    CHECK_FALSE(contains(cube(-1, {-1}), cube(0, {0})));
    CHECK(contains(cube(0, {-1}), cube(3, {-1})));
    CHECK_FALSE(contains(cube(0, {-1}), cube(3, {-9})));
}

TEST_CASE("parent and children are inverse") {
    DyadicCube q = cube(2, {3, -5});
    DyadicCube up = parent(q);
    CHECK(up.j == 1);
    CHECK(up.m == std::vector<std::int64_t>{1, -3});
    bool found = false;
    for (const DyadicCube& c : children(up))
        if (c == q) found = true;
    CHECK(found);
    CHECK(children(up).size() == 4);
    for (const DyadicCube& c : children(up)) CHECK(parent(c) == up);
}

TEST_CASE("ancestor chains") {
    // Q_{2,3} in d=1 walks through Q_{1,1} and Q_{0,0}
    auto chain = ancestors(cube(2, {3}), 0);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0] == cube(1, {1}));
    CHECK(chain[1] == cube(0, {0}));

    // negative coordinates round toward minus infinity
    auto neg = ancestors(cube(1, {-1}), 0);
    REQUIRE(neg.size() == 1);
    CHECK(neg[0] == cube(0, {-1}));

    CHECK(ancestors(cube(5, {17}), 5).empty());
    CHECK(ancestors(cube(3, {5}), -2).size() == 5);

    // prefix property: cutting the chain at a higher floor gives the same cubes
    auto full = ancestors(cube(6, {45}), -3);
    auto part = ancestors(cube(6, {45}), 1);
    REQUIRE(part.size() <= full.size());
    for (std::size_t k = 0; k < part.size(); ++k) CHECK(part[k] == full[k]);

    CHECK(ancestor_at(cube(4, {13}), 2) == cube(2, {3}));
    CHECK_THROWS_AS(ancestor_at(cube(1, {0}), 2), std::invalid_argument);
}

TEST_CASE("nesting trichotomy on random pairs") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> lvl(-3, 4);
    std::uniform_int_distribution<std::int64_t> coord(-6, 6);
    for (int k = 0; k < 3000; ++k) {
        int d = 1 + int(k % 3 == 0);
        std::vector<std::int64_t> ma(d), mb(d);
        for (int i = 0; i < d; ++i) {
            ma[i] = coord(rng);
            mb[i] = coord(rng);
        }
        DyadicCube a{lvl(rng), ma}, b{lvl(rng), mb};
        int relations = int(disjoint(a, b)) + int(contains(a, b)) + int(contains(b, a));
        if (a == b)
            CHECK(relations == 2);  // mutual containment, not disjoint
        else
            CHECK(relations == 1);
    }
}

TEST_CASE("join of cubes in one orthant") {
    DyadicCube j1 = join(cube(2, {0}), cube(2, {3}));
    CHECK(j1 == cube(0, {0}));
    DyadicCube j2 = join(cube(3, {-1}), cube(1, {-1}));
    CHECK(contains(j2, cube(3, {-1})));
    CHECK(contains(j2, cube(1, {-1})));
    // cubes on opposite sides of a coordinate plane have no dyadic join
    CHECK_THROWS_AS(join(cube(0, {0}), cube(0, {-1})), std::invalid_argument);
    CHECK(orthant_of(cube(0, {0, -1})) == 2u);
}

TEST_CASE("coefficient storage validates keys") {
    CoeffSeq t(2);
    t.set(1, 0, {0, 0}, 1.0);
    t.set(3, 2, {1, -4}, -0.5);
    t.set(0, 0, {2, 2}, 0.25);  // scaling block at the zero level
    CHECK(t.size() == 3);
    CHECK(t.get(3, 2, {1, -4}) == -0.5);
    CHECK(t.get(1, 5, {0, 0}) == 0.0);
    CHECK(t.finest_level() == 2);

    CHECK_THROWS_AS(t.set(1, -1, {0, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(t.set(4, 1, {0, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(t.set(0, 1, {0, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(t.set(1, 0, {0}, 1.0), std::invalid_argument);

    t.set(3, 2, {1, -4}, 0.0);  // zero erases
    CHECK(t.size() == 2);

    auto cubes = t.support_cubes();
    CHECK(cubes.size() == 2);
}

TEST_CASE("candidate enumeration covers single-cube support") {
    CoeffSeq t(1);
    t.set(1, 0, {0}, 1.0);
    CandidateSet cs = candidate_cubes(t, ExtRational(1, 2), 1.0);
    REQUIRE(!cs.cubes.empty());
    CHECK(std::find(cs.cubes.begin(), cs.cubes.end(), cube(0, {0})) != cs.cubes.end());
    CHECK(cs.stop_level == 0);
}

TEST_CASE("candidates stay inside each orthant") {
    CoeffSeq t(1);
    t.set(1, 0, {0}, 1.0);
    t.set(1, 0, {-1}, 1.0);
    CandidateSet cs = candidate_cubes(t, ExtRational(0), 2.0);
    for (const DyadicCube& c : cs.cubes) {
        bool left = contains(cube(0, {-1}), c) || c == cube(0, {-1});
        bool right = contains(cube(0, {0}), c) || c == cube(0, {0});
        CHECK((left || right));
    }
}

TEST_CASE("deep chains include every ancestor up to the orthant join") {
    CoeffSeq t(1);
    t.set(1, 4, {3}, 1.0);
    t.set(1, 4, {9}, 1.0);
    CandidateSet cs = candidate_cubes(t, ExtRational(1, 4), 2.0);
    // join of m=3 and m=9 at level 4 is [0,1) at level 0
    DyadicCube top = join(cube(4, {3}), cube(4, {9}));
    CHECK(top == cube(0, {0}));
    for (const DyadicCube& anc : ancestors(cube(4, {3}), top.j))
        CHECK(std::find(cs.cubes.begin(), cs.cubes.end(), anc) != cs.cubes.end());
    CHECK(cs.stop_level == 0);
}
