#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "sslab/color_coding.hpp"
#include "sslab/core.hpp"
#include "test_util.hpp"

using namespace sslab;

namespace {
const SumsetEngineConfig kDense{SumsetEngine::dense, 0, true};

PointSet combine_oracle(const PointSet& z, const ItemMultiset& xl, Coord t) {
    Box box = Box::full(z.dim(), t);
    PointSet sums = naive_oracle(xl, t * 2 + 1);  // uncapped enough for the box filter
    return intersect_box(testutil::brute_sumset(z, sums), box);
}
}  // namespace

TEST_CASE("Reed-Solomon family construction") {
    SECTION("n=4, m=2: interval [8,16] gives p=11, D=1") {
        RSHashFamily f = build_rs_family(4, 2);
        REQUIRE(f.p == 11);
        REQUIRE(f.degree == 1);
    }
    SECTION("degenerate n=1, m=1: p=2, D=0") {
        RSHashFamily f = build_rs_family(1, 1);
        REQUIRE(f.p == 2);
        REQUIRE(f.degree == 0);
    }
    SECTION("p lands in the stated interval and Binom(m,2)*D < p") {
        std::mt19937_64 rng(61);
        for (int it = 0; it < 50; ++it) {
            std::uint64_t n = 1 + rng() % 500;
            unsigned m = 1 + static_cast<unsigned>(rng() % 12);
            RSHashFamily f = build_rs_family(n, m);
            std::uint64_t logn = std::max<std::uint64_t>(1, ceil_log2(n));
            REQUIRE(f.p >= static_cast<std::uint64_t>(m) * m * logn);
            REQUIRE(f.p <= 2 * static_cast<std::uint64_t>(m) * m * logn);
            REQUIRE(static_cast<std::uint64_t>(m) * (m - 1) / 2 * f.degree < f.p);
        }
    }
    SECTION("distinct items agree on at most D functions") {
        RSHashFamily f = build_rs_family(64, 4);
        for (std::uint64_t x1 = 0; x1 < 20; ++x1)
            for (std::uint64_t x2 = x1 + 1; x2 < 20; ++x2) {
                unsigned agree = 0;
                for (std::uint64_t h = 0; h < f.p; ++h)
                    if (f.hash(h, x1) == f.hash(h, x2)) ++agree;
                REQUIRE(agree <= f.degree);
            }
    }
    SECTION("every m-subset is hashed perfectly by some member") {
        std::mt19937_64 rng(67);
        for (int it = 0; it < 100; ++it) {
            std::uint64_t n = 8 + rng() % 60;
            unsigned m = 2 + static_cast<unsigned>(rng() % 4);
            RSHashFamily f = build_rs_family(n, m);
            std::set<std::uint64_t> subset;
            while (subset.size() < m) subset.insert(rng() % n);
            bool perfect = false;
            for (std::uint64_t h = 0; h < f.p && !perfect; ++h) {
                std::set<std::uint64_t> img;
                for (std::uint64_t x : subset) img.insert(f.hash(h, x));
                perfect = img.size() == subset.size();
            }
            REQUIRE(perfect);
        }
    }
}

TEST_CASE("combine_large_items on the worked examples") {
    SECTION("no large items returns Z (boxed)") {
        PointSet z = PointSet::of_values({0, 3, 7});
        REQUIRE(combine_large_items(z, ItemMultiset(1), 10, Rational(1, 2), kDense) == z);
    }
    SECTION("two large items whose pair sum escapes the box") {
        PointSet got = combine_large_items(PointSet::of_values({0}),
                                           ItemMultiset::of_values({6, 7}), 10,
                                           Rational(1, 2), kDense);
        REQUIRE(got == PointSet::of_values({0, 6, 7}));
    }
    SECTION("shifted base set") {
        PointSet got = combine_large_items(PointSet::of_values({0, 1}),
                                           ItemMultiset::of_values({9}), 10, Rational(1, 2),
                                           kDense);
        REQUIRE(got == PointSet::of_values({0, 1, 9, 10}));
    }
    SECTION("rejects items below the largeness threshold") {
        REQUIRE_THROWS_AS(combine_large_items(PointSet::of_values({0}),
                                              ItemMultiset::of_values({2}), 10,
                                              Rational(1, 2), kDense),
                          std::invalid_argument);
    }
}

TEST_CASE("combine_large_items equals the brute oracle") {
    std::mt19937_64 rng(71);
    for (int it = 0; it < 120; ++it) {
        int d = 1 + static_cast<int>(rng() % 2);
        Coord t = 8 + static_cast<Coord>(rng() % 56);
        // gamma = 1/2: large items exceed t/2 in some coordinate
        std::vector<std::vector<Coord>> pts;
        std::int64_t nl = 1 + static_cast<std::int64_t>(rng() % 6);
        for (std::int64_t i = 0; i < nl; ++i) {
            std::vector<Coord> p(d);
            int big = static_cast<int>(rng() % d);
            for (int j = 0; j < d; ++j)
                p[j] = j == big ? t / 2 + 1 + static_cast<Coord>(rng() % (t / 2 + 1))
                                : static_cast<Coord>(rng() % (t + 1));
            pts.push_back(std::move(p));
        }
        ItemMultiset xl = ItemMultiset::from_raw(d, pts);
        PointSet z = intersect_box(testutil::random_point_set(rng, d, 10, t), Box::full(d, t));
        if (z.empty()) z = PointSet::zero(d);
        PointSet got = combine_large_items(z, xl, t, Rational(1, 2), kDense);
        REQUIRE(got == combine_oracle(z, xl, t));
        // repeat run is identical (deterministic family)
        REQUIRE(combine_large_items(z, xl, t, Rational(1, 2), kDense) == got);
    }
}

TEST_CASE("oversized families fall back to the exact sequential fold") {
    std::mt19937_64 rng(73);
    Coord t = 40;
    std::vector<std::vector<Coord>> pts;
    for (int i = 0; i < 50; ++i) pts.push_back({1 + static_cast<Coord>(rng() % t)});
    // gamma = 1/1024 forces m = n_items, i.e. a family beyond the work cap.
    ItemMultiset xl = ItemMultiset::from_raw(1, pts);
    PointSet z = PointSet::of_values({0, 1, 2});
    PointSet got = combine_large_items(z, xl, t, Rational(1, 1024), kDense);
    // bellman stands in for the 2^50-subset enumeration here
    Box box = Box::full(1, t);
    PointSet want = intersect_box(testutil::brute_sumset(z, bellman(xl, t)), box);
    REQUIRE(got == want);
}

TEST_CASE("random_partition is a reproducible partition") {
    std::mt19937_64 rng(79);
    SECTION("K = 1 returns the multiset itself") {
        ItemMultiset xs = ItemMultiset::of_values({1, 2, 2, 5});
        auto parts = random_partition(xs, 1, 9);
        REQUIRE(parts.size() == 1);
        REQUIRE(parts[0] == xs);
    }
    SECTION("empty input gives K empty parts") {
        auto parts = random_partition(ItemMultiset(1), 4, 9);
        REQUIRE(parts.size() == 4);
        for (const auto& p : parts) REQUIRE(p.empty());
    }
    SECTION("multiset union of the parts equals the input; seed-stable") {
        for (int it = 0; it < 40; ++it) {
            int d = 1 + static_cast<int>(rng() % 2);
            ItemMultiset xs = testutil::random_items(rng, d, 20, 30);
            std::size_t k = 1 + rng() % 6;
            std::uint64_t seed = rng();
            auto parts = random_partition(xs, k, seed);
            REQUIRE(parts.size() == k);
            std::int64_t total = 0;
            std::vector<std::vector<Coord>> all;
            std::vector<std::int64_t> counts;
            for (const auto& p : parts) {
                total += p.n();
                for (std::size_t i = 0; i < p.distinct_size(); ++i) {
                    all.emplace_back(p.point(i).begin(), p.point(i).end());
                    counts.push_back(p.multiplicity(i));
                }
            }
            REQUIRE(total == xs.n());
            REQUIRE(ItemMultiset::from_raw(d, all, counts) == xs);
            auto again = random_partition(xs, k, seed);
            for (std::size_t i = 0; i < k; ++i) REQUIRE(again[i] == parts[i]);
        }
    }
}
