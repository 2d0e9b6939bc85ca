#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sslab/color_coding.hpp"
#include "sslab/core.hpp"
#include "sslab/sumset.hpp"
#include "sslab/types.hpp"
#include "sslab/util.hpp"

namespace sslab {

struct SolverConfig {
    // K = ceil(k_const * log2(s) + log2(d)); 100 is the paper-faithful value,
    // 8 keeps desk-scale instances off the pure base case.
    unsigned k_const = 8;
    std::int64_t base_n = 16;  // |X| <= base_n solves by Bellman
    Coord base_t = 64;         // floor(t) <= base_t solves by Bellman
    std::uint64_t seed = 0;
    unsigned depth_cap_const = 400;  // depth guard: depth_cap_const * log2|X|
    unsigned max_retries = 3;
    SumsetEngineConfig engine{SumsetEngine::output_sensitive, 0, true};
};

/// s = s1^(4d) * s2^(4d) * n^(4d), saturating at 2^64-1. The injection into
/// item/half-sum tuples guarantees s >= |S(X,t)| when s1, s2 are the halves'
/// counts at target t/2.
inline std::uint64_t combine_size_estimates(std::uint64_t s1, std::uint64_t s2,
                                            std::uint64_t n, int d) {
    std::uint64_t r = 1;
    for (int i = 0; i < 4 * d; ++i) {
        r = saturating_mul(r, s1);
        r = saturating_mul(r, s2);
        r = saturating_mul(r, n);
    }
    return r;
}

namespace detail {

struct DepthExceeded {};

inline unsigned solver_k(std::uint64_t s, int d, unsigned k_const) {
    double v = k_const * std::log2(static_cast<double>(std::max<std::uint64_t>(2, s))) +
               std::log2(static_cast<double>(d));
    unsigned k = static_cast<unsigned>(std::ceil(v));
    // K <= 2 would let the child target (1+1/K)*t/K grow or stall.
    return std::max(3u, k);
}

/// Clamp the size estimate to the trivial bound (floor(t)+1)^d.
inline std::uint64_t clamp_estimate(std::uint64_t s, Coord t, int d) {
    std::uint64_t cube = saturating_pow(static_cast<std::uint64_t>(t) + 1, d);
    return std::max<std::uint64_t>(2, std::min(s, cube));
}

inline PointSet fast_subset_sum_rec(const ItemMultiset& x, Rational t, std::uint64_t s,
                                    const SolverConfig& cfg, std::uint64_t seed,
                                    unsigned depth, unsigned depth_cap, WorkCounters* w) {
    if (w && depth > w->depth_max) w->depth_max = depth;
    if (depth > depth_cap) throw DepthExceeded{};
    const Coord T = t.floor();
    const int d = x.dim();
    if (T < 0) return PointSet(d);
    if (x.n() <= cfg.base_n || T <= cfg.base_t) return bellman(x, T, w);

    s = clamp_estimate(s, T, d);
    const unsigned K = solver_k(s, d, cfg.k_const);
    // Past 2^62 the threshold t/K^5 is below 1 anyway; keep K^5 in Rational range.
    const std::uint64_t k5 =
        std::min<std::uint64_t>(saturating_pow(K, 5), std::uint64_t{1} << 62);

    // Split at t/K^5: small items have every coordinate at most that.
    ItemMultiset xs(d), xl(d);
    for (std::size_t i = 0; i < x.distinct_size(); ++i) {
        auto p = x.point(i);
        bool small = true;
        for (int j = 0; j < d; ++j)
            if (static_cast<unsigned __int128>(p[j]) * k5 >
                static_cast<unsigned __int128>(T))
                small = false;
        (small ? xs : xl).append(p, x.multiplicity(i));
    }

    std::vector<ItemMultiset> parts =
        random_partition(xs, K, derive_seed(seed, 0xA11u * depth + 1));
    PointSet z = PointSet::zero(d);
    Rational child_t(static_cast<std::int64_t>(K + 1) * T,
                     static_cast<std::int64_t>(K) * K);
    SumsetEngineConfig ecfg = cfg.engine;
    std::vector<std::size_t> fold_sizes;
    for (unsigned k = 0; k < K; ++k) {
        if (parts[k].empty()) continue;  // Z + {0} is the identity
        PointSet zk = fast_subset_sum_rec(parts[k], child_t, s, cfg,
                                          derive_seed(seed, k + 2), depth + 1, depth_cap, w);
        ecfg.seed = derive_seed(seed, 0xF01dULL + k);
        z = sumset(z, zk, ecfg, w);
        if (debug_asserts_enabled()) fold_sizes.push_back(z.size());
    }

    // Values beyond the box cannot re-enter it; cap before the large items.
    Box box = Box::full(d, T);
    z = intersect_box(z, box);
    ecfg.seed = derive_seed(seed, 0x1a06eULL);
    PointSet out = combine_large_items(z, xl, T, Rational(1, static_cast<std::int64_t>(k5)),
                                       ecfg, w);

    if (debug_asserts_enabled() && !fold_sizes.empty() && out.size() > 1) {
        // Sub-multiplicativity consequence: every intermediate fold stays
        // below |S(X,t)|^{K/(K-1)}, i.e. fold^(K-1) <= |S|^K.
        long double lhs_log = 0, rhs_log = K * std::log2(static_cast<long double>(out.size()));
        for (std::size_t fs : fold_sizes) {
            lhs_log = (K - 1) * std::log2(static_cast<long double>(fs));
            if (lhs_log > rhs_log + 1e-6)
                throw std::logic_error("fold size exceeded sub-multiplicativity bound");
        }
    }
    return out;
}

}  // namespace detail

/// FastSubsetSum(X, t, s): exact on every returned point; complete with high
/// probability provided s >= |S(X, floor(t))|. Retries with a fresh seed if
/// the recursion depth guard (depth_cap_const * log2|X|) trips.
inline PointSet fast_subset_sum(const ItemMultiset& x, Rational t, std::uint64_t s,
                                const SolverConfig& cfg = {}, WorkCounters* w = nullptr) {
    if (s < 1) throw std::invalid_argument("fast_subset_sum: s must be >= 1");
    unsigned depth_cap =
        cfg.depth_cap_const *
        std::max(1u, ceil_log2(static_cast<std::uint64_t>(std::max<std::int64_t>(2, x.n()))));
    std::uint64_t seed = cfg.seed;
    for (unsigned attempt = 0;; ++attempt) {
        try {
            return detail::fast_subset_sum_rec(x, t, s, cfg, seed, 0, depth_cap, w);
        } catch (const detail::DepthExceeded&) {
            if (w) w->retries += 1;
            if (attempt >= cfg.max_retries)
                throw RetryExhausted("fast_subset_sum: depth guard tripped on every retry");
            seed = derive_seed(seed, 0xdeadULL + attempt);
        }
    }
}

/// Full solver: estimates s recursively (halve X, solve both halves at t/2,
/// then s = s1^(4d) s2^(4d) |X|^(4d)) and runs FastSubsetSum.
inline PointSet solve(const ItemMultiset& x, Coord t, const SolverConfig& cfg = {},
                      WorkCounters* w = nullptr) {
    const int d = x.dim();
    if (t < 0) return PointSet(d);
    if (x.n() <= cfg.base_n) return bellman(x, t, w);

    // Split copies into halves of size at most ceil(n/2), in canonical order.
    std::int64_t half = (x.n() + 1) / 2, taken = 0;
    ItemMultiset x1(d), x2(d);
    for (std::size_t i = 0; i < x.distinct_size(); ++i) {
        std::int64_t m = x.multiplicity(i);
        std::int64_t to_first = std::min(m, std::max<std::int64_t>(0, half - taken));
        if (to_first > 0) x1.append(x.point(i), to_first);
        if (m - to_first > 0) x2.append(x.point(i), m - to_first);
        taken += to_first;
    }
    PointSet s1 = solve(x1, t / 2, cfg, w);
    PointSet s2 = solve(x2, t / 2, cfg, w);
    std::uint64_t s = combine_size_estimates(s1.size(), s2.size(),
                                             static_cast<std::uint64_t>(x.n()), d);
    return fast_subset_sum(x, Rational(t), s, cfg, w);
}

/// Decision form: is the all-t corner point a subset sum?
inline bool decide(const ItemMultiset& x, Coord t, const SolverConfig& cfg = {},
                   WorkCounters* w = nullptr) {
    PointSet s = solve(x, t, cfg, w);
    std::vector<Coord> target(x.dim(), t);
    return s.contains(target);
}

}  // namespace sslab
