#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "sslab/core.hpp"
#include "test_util.hpp"

using namespace sslab;

TEST_CASE("preprocess_items drops, caps and orders") {
    SECTION("item exceeding the target is removed") {
        ItemMultiset m = preprocess_items({{5}}, 4, 1);
        REQUIRE(m.n() == 0);
    }
    SECTION("multiplicity capped at floor(t/x)") {
        ItemMultiset m = preprocess_items({{1}, {1}, {1}, {1}}, 2, 1);
        REQUIRE(m.distinct_size() == 1);
        REQUIRE(m.multiplicity(0) == 2);
    }
    SECTION("vector cap uses the minimum over nonzero coordinates") {
        ItemMultiset m = preprocess_items({{1, 3}, {1, 3}, {2, 2}}, 3, 2);
        REQUIRE(m.distinct_size() == 2);
        REQUIRE(m.multiplicity(0) == 1);  // (1,3): min(3/1, 3/3) = 1
        REQUIRE(m.multiplicity(1) == 1);  // (2,2): 3/2 = 1
    }
    SECTION("zero vector removed") {
        ItemMultiset m = preprocess_items({{0}, {3}}, 5, 1);
        REQUIRE(m.n() == 1);
    }
    SECTION("rejects negative coordinates and bad dimension") {
        REQUIRE_THROWS_AS(preprocess_items({{-1}}, 4, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(preprocess_items({{1}}, 4, 0), std::invalid_argument);
    }
    SECTION("idempotent") {
        std::mt19937_64 rng(7);
        for (int it = 0; it < 50; ++it) {
            int d = 1 + static_cast<int>(rng() % 3);
            ItemMultiset raw = testutil::random_items(rng, d, 10, 20);
            Coord t = static_cast<Coord>(rng() % 16);
            ItemMultiset once = preprocess_items(raw, t);
            REQUIRE(preprocess_items(once, t) == once);
        }
    }
}

TEST_CASE("bellman on the worked examples") {
    REQUIRE(bellman(ItemMultiset(1), 5) == PointSet::of_values({0}));
    REQUIRE(bellman(ItemMultiset::of_values({1, 2}), 3) == PointSet::of_values({0, 1, 2, 3}));
    REQUIRE(bellman(ItemMultiset::of_values({3, 3}), 7) == PointSet::of_values({0, 3, 6}));
}

TEST_CASE("naive oracle on the worked examples") {
    REQUIRE(naive_oracle(ItemMultiset::of_values({2}), 1) == PointSet::of_values({0}));
    REQUIRE(naive_oracle(ItemMultiset::of_values({1, 2, 4}), 7) ==
            PointSet::of_values({0, 1, 2, 3, 4, 5, 6, 7}));
    REQUIRE(naive_oracle(ItemMultiset::from_raw(2, {{1, 0}, {0, 1}}), 1) ==
            PointSet::of_points(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    ItemMultiset big = ItemMultiset::from_raw(1, {{1}}, {25});
    REQUIRE_THROWS_AS(naive_oracle(big, 30), std::invalid_argument);
}

TEST_CASE("unbounded oracle on the worked examples") {
    REQUIRE(unbounded_oracle(ItemMultiset::of_values({2}), 7) ==
            PointSet::of_values({0, 2, 4, 6}));
    REQUIRE(unbounded_oracle(ItemMultiset::of_values({3, 5}), 11) ==
            PointSet::of_values({0, 3, 5, 6, 8, 9, 10, 11}));
    REQUIRE(unbounded_oracle(ItemMultiset::of_values({1}), 5) ==
            PointSet::of_values({0, 1, 2, 3, 4, 5}));
    REQUIRE_THROWS_AS(unbounded_oracle(ItemMultiset::of_values({1}), Coord{1} << 40),
                      std::invalid_argument);
}

TEST_CASE("bellman equals the exhaustive oracle") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        int d = 1 + static_cast<int>(rng() % 2);
        std::int64_t n = static_cast<std::int64_t>(rng() % 13);
        Coord t = 1 + static_cast<Coord>(rng() % 64);
        ItemMultiset x = preprocess_items(testutil::random_items(rng, d, n, t + 4), t);
        PointSet s = bellman(x, t);
        REQUIRE(s == naive_oracle(x, t));
        REQUIRE(s.contains(std::vector<Coord>(d, 0)));  // 0 is always a subset sum
    }
}
