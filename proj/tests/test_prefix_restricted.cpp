#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "sslab/prefix_restricted.hpp"
#include "test_util.hpp"

using namespace sslab;

namespace {
const SumsetEngineConfig kDense{SumsetEngine::dense, 0, true};
}

TEST_CASE("prefilter keeps exactly the compatible points") {
    SECTION("worked examples") {
        auto [a1, b1] = prefilter_compatible(PointSet::of_values({5, 6}),
                                             PointSet::of_values({5, 6}), Box(1, 10, 1));
        REQUIRE(a1 == PointSet::of_values({5}));
        REQUIRE(b1 == PointSet::of_values({5}));

        PointSet a = PointSet::of_values({1, 99}), b = PointSet::of_values({2, 98});
        auto [a2, b2] = prefilter_compatible(a, b, Box(1, 10, 0));
        REQUIRE(a2 == a);  // k = 0: no cap active
        REQUIRE(b2 == b);

        auto [a3, b3] = prefilter_compatible(PointSet::of_values({20}),
                                             PointSet::of_values({20}), Box(1, 10, 1));
        REQUIRE(a3.empty());
        REQUIRE(b3.empty());
    }
    SECTION("matches the brute definition for k = 1, 2, 3") {
        std::mt19937_64 rng(41);
        for (int it = 0; it < 200; ++it) {
            int d = 1 + static_cast<int>(rng() % 3);
            int k = static_cast<int>(rng() % (d + 1));
            Coord t = 1 + static_cast<Coord>(rng() % 30);
            Box box(d, t, k);
            PointSet a = testutil::random_point_set(rng, d, 25, 2 * t);
            PointSet b = testutil::random_point_set(rng, d, 25, 2 * t);
            auto [fa, fb] = prefilter_compatible(a, b, box);
            PointSet wa(d), wb(d);
            std::vector<Coord> sum(d);
            for (std::size_t i = 0; i < a.size(); ++i) {
                bool ok = false;
                for (std::size_t j = 0; j < b.size() && !ok; ++j) {
                    ok = true;
                    for (int c = 0; c < k; ++c)
                        if (a[i][c] + b[j][c] > t) ok = false;
                }
                if (ok) wa.append(a[i]);
            }
            for (std::size_t j = 0; j < b.size(); ++j) {
                bool ok = false;
                for (std::size_t i = 0; i < a.size() && !ok; ++i) {
                    ok = true;
                    for (int c = 0; c < k; ++c)
                        if (a[i][c] + b[j][c] > t) ok = false;
                }
                if (ok) wb.append(b[j]);
            }
            REQUIRE(fa == wa);
            REQUIRE(fb == wb);
        }
    }
}

TEST_CASE("block partition on the worked examples") {
    SECTION("all of B sharing one key makes a single heavy block") {
        PointSet a = PointSet::of_points(2, {{0, 0}, {1, 1}, {2, 0}, {3, 2}});
        PointSet b = PointSet::of_points(2, {{5, 1}, {5, 2}, {5, 3}});
        BlockPartition bp = build_block_partition(a, b, 4, Box(2, 10, 1));
        REQUIRE(bp.b_blocks.size() == 1);
        REQUIRE(bp.b_blocks[0].heavy);
        REQUIRE(bp.b_blocks[0].pivot == 5);
    }
    SECTION("eight distinct keys with g = 8 give light blocks of size <= 2") {
        PointSet a = PointSet::of_values({0, 1});
        PointSet b = PointSet::of_values({0, 1, 2, 3, 4, 5, 6, 7});
        BlockPartition bp = build_block_partition(a, b, 8, Box(1, 10, 1));
        for (const auto& blk : bp.b_blocks) {
            REQUIRE_FALSE(blk.heavy);
            REQUIRE(blk.size() <= 2);
        }
    }
    SECTION("pivot threshold t - z subdivides the A-block") {
        // A keys {0,1,2,3} in one initial chunk (g=2); pivot z=9 at t=10 cuts
        // at key <= 1, leaving {0,1} and {2,3}.
        PointSet a = PointSet::of_points(2, {{0, 4}, {1, 5}, {2, 6}, {3, 7}});
        PointSet b = PointSet::of_points(2, {{9, 0}, {9, 1}});
        BlockPartition bp = build_block_partition(a, b, 2, Box(2, 10, 1));
        REQUIRE(bp.a_blocks.size() == 2);
        REQUIRE(bp.a_blocks[0].min_key == 0);
        REQUIRE(bp.a_blocks[0].max_key == 1);
        REQUIRE(bp.a_blocks[1].min_key == 2);
        REQUIRE(bp.a_blocks[1].max_key == 3);
    }
}

TEST_CASE("block partition properties (1)-(4) on random inputs") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 300; ++it) {
        int d = 1 + static_cast<int>(rng() % 3);
        int k = 1 + static_cast<int>(rng() % d);
        Coord t = 1 + static_cast<Coord>(rng() % 40);
        Box box(d, t, k);
        std::size_t g = 2 + rng() % 10;
        PointSet a = testutil::random_point_set(rng, d, 60, t);
        PointSet b = testutil::random_point_set(rng, d, 60, t);
        BlockPartition bp = build_block_partition(a, b, g, box);
        const int key = bp.key_coord;
        REQUIRE(key == k - 1);
        REQUIRE(bp.a_blocks.size() <= g);
        REQUIRE(bp.b_blocks.size() <= g);
        const std::size_t ca = (2 * a.size() + g - 1) / g;
        const std::size_t cb = (2 * b.size() + g - 1) / g;
        for (std::size_t i = 0; i < bp.a_blocks.size(); ++i) {
            REQUIRE(bp.a_blocks[i].size() <= ca);  // property (3)
            if (i > 0)                              // property (1)
                REQUIRE(bp.a_blocks[i - 1].max_key <= bp.a_blocks[i].min_key);
        }
        for (std::size_t j = 0; j < bp.b_blocks.size(); ++j) {
            const auto& blk = bp.b_blocks[j];
            if (j > 0)  // property (2), strict
                REQUIRE(bp.b_blocks[j - 1].max_key < blk.min_key);
            if (blk.heavy) {
                REQUIRE(blk.min_key == blk.max_key);
                REQUIRE(blk.size() * g >= 2 * b.size());
                // property (4)(ii): a boundary separates keys <= t - z from
                // the rest (with sentinels beyond the first/last block).
                Coord thr = t - blk.pivot;
                bool boundary = false;
                if (bp.a_blocks.empty()) {
                    boundary = true;
                } else if (bp.a_blocks.front().min_key > thr ||
                           bp.a_blocks.back().max_key <= thr) {
                    boundary = true;
                } else {
                    for (std::size_t i = 0; i + 1 < bp.a_blocks.size(); ++i)
                        if (bp.a_blocks[i].max_key <= thr &&
                            bp.a_blocks[i + 1].min_key > thr)
                            boundary = true;
                }
                REQUIRE(boundary);
            } else {
                REQUIRE(blk.size() <= cb);  // property (4)(i)
            }
        }
    }
}

TEST_CASE("prefix-restricted sumset equals the brute oracle") {
    std::mt19937_64 rng(47);
    for (int it = 0; it < 400; ++it) {
        int d = 1 + static_cast<int>(rng() % 3);
        int k = static_cast<int>(rng() % (d + 1));
        Coord t = 1 + static_cast<Coord>(rng() % 128);
        Box box(d, t, k);
        PointSet a = testutil::random_point_set(rng, d, 40, t);
        PointSet b = testutil::random_point_set(rng, d, 40, t);
        PointSet got = prefix_restricted_sumset(a, b, box, kDense);
        REQUIRE(got == testutil::brute_prefix_restricted(a, b, box));
    }
}

TEST_CASE("k = 0 reduces to the plain sumset") {
    std::mt19937_64 rng(53);
    PointSet a = testutil::random_point_set(rng, 2, 20, 30);
    PointSet b = testutil::random_point_set(rng, 2, 20, 30);
    REQUIRE(prefix_restricted_sumset(a, b, Box(2, 5, 0), kDense) ==
            testutil::brute_sumset(a, b));
}

TEST_CASE("footnote-2 adversarial pair: large sumset, empty restriction") {
    const Coord t = 1000;
    const std::int64_t n = 8;
    std::vector<Coord> av, bv;
    for (std::int64_t i = 1; i <= n; ++i) av.push_back(t / 2 + i);
    for (std::int64_t j = 1; j <= n; ++j) bv.push_back(t / 2 + j * n);
    PointSet a = PointSet::of_values(av), b = PointSet::of_values(bv);
    REQUIRE(sumset(a, b, kDense).size() == 64);
    REQUIRE(prefix_restricted_sumset(a, b, Box(1, t, 1), kDense).empty());
}

TEST_CASE("completed runs stay within the stated work budget") {
    std::mt19937_64 rng(59);
    for (int it = 0; it < 100; ++it) {
        int d = 1 + static_cast<int>(rng() % 2);
        int k = 1 + static_cast<int>(rng() % d);
        Coord t = 8 + static_cast<Coord>(rng() % 100);
        Box box(d, t, k);
        PointSet a = testutil::random_point_set(rng, d, 50, t);
        PointSet b = testutil::random_point_set(rng, d, 50, t);
        WorkCounters w;
        PointSet c = prefix_restricted_sumset(a, b, box, kDense, &w);
        double budget = detail::pr_budget(a.size(), b.size(),
                                          std::max<std::uint64_t>(2, 2 * c.size()), k, d);
        REQUIRE(static_cast<double>(w.pr_last_work) <= budget);
    }
}
