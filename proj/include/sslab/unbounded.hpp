#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sslab/core.hpp"
#include "sslab/prefix_restricted.hpp"
#include "sslab/solver.hpp"
#include "sslab/types.hpp"
#include "sslab/util.hpp"

namespace sslab {

namespace detail {

/// S*({x}, t): multiples of a single item inside the box.
inline PointSet single_item_multiples(const ItemMultiset& x, Coord t) {
    const int d = x.dim();
    Box box = Box::full(d, t);
    PointSet out = PointSet::zero(d);
    if (x.distinct_size() == 0) return out;
    auto p = x.point(0);
    std::vector<Coord> acc(d, 0);
    for (;;) {
        for (int j = 0; j < d; ++j) acc[j] += p[j];
        if (!box.contains(acc)) break;
        out.append(acc);
    }
    return out;
}

}  // namespace detail

/// Deterministic unbounded subset sums S*(X, t): recurse on the small items
/// with target (1+1/K) t/K, fold the result K times, then absorb large items
/// by K^5*d prefix-restricted rounds with {0} adjoined (the loop is monotone,
/// so it may stop at its fixpoint). Multiplicities are irrelevant and the
/// sumsets run on the dense engine, so two runs are identical.
inline PointSet fast_unbounded(const ItemMultiset& x_in, Coord t, const SolverConfig& cfg = {},
                               WorkCounters* w = nullptr) {
    const int d = x_in.dim();
    if (t < 0) return PointSet(d);
    // Collapse to a set of distinct items inside the box, zero removed.
    ItemMultiset x(d);
    for (std::size_t i = 0; i < x_in.distinct_size(); ++i) {
        auto p = x_in.point(i);
        bool keep = false, fits = true;
        for (int j = 0; j < d; ++j) {
            if (p[j] > t) fits = false;
            if (p[j] > 0) keep = true;
        }
        if (fits && keep) x.append(p, 1);
    }
    if (x.distinct_size() <= 1) return detail::single_item_multiples(x, t);
    if (t <= cfg.base_t) return unbounded_oracle(x, t);

    const unsigned K = detail::solver_k(static_cast<std::uint64_t>(t), d, cfg.k_const);
    const std::uint64_t k5 =
        std::min<std::uint64_t>(saturating_pow(K, 5), std::uint64_t{1} << 62);

    ItemMultiset xs(d), xl(d);
    for (std::size_t i = 0; i < x.distinct_size(); ++i) {
        auto p = x.point(i);
        bool small = true;
        for (int j = 0; j < d; ++j)
            if (static_cast<unsigned __int128>(p[j]) * k5 > static_cast<unsigned __int128>(t))
                small = false;
        (small ? xs : xl).append(p, 1);
    }

    SumsetEngineConfig dense_cfg{SumsetEngine::dense, 0, true};
    Coord child_t = Rational(static_cast<std::int64_t>(K + 1) * t,
                             static_cast<std::int64_t>(K) * K)
                        .floor();
    PointSet z0 = fast_unbounded(xs, child_t, cfg, w);
    PointSet z = PointSet::zero(d);
    for (unsigned k = 0; k < K; ++k) {
        std::size_t before = z.size();
        z = sumset(z, z0, dense_cfg, w);
        if (z.size() == before && k > 0) break;  // folded to the fixpoint
    }
    if (debug_asserts_enabled() && cfg.k_const >= 100) {
        // Claim: the K-fold of Z0 captures S*(X_S,t) once K > log2|Z| + log2 d.
        if (!(K > ceil_log2(z.size()) + ceil_log2(static_cast<std::uint64_t>(d))))
            throw std::logic_error("unbounded fold: K below the claimed threshold");
    }

    Box box = Box::full(d, t);
    z = intersect_box(z, box);
    if (xl.distinct_size() == 0) return z;

    std::vector<Coord> xl_flat(xl.support().flat());
    xl_flat.insert(xl_flat.end(), static_cast<std::size_t>(d), 0);  // adjoin 0
    PointSet xl0 = PointSet::from_flat(d, std::move(xl_flat));
    std::uint64_t rounds = saturating_mul(k5, static_cast<std::uint64_t>(d));
    for (std::uint64_t r = 0; r < rounds; ++r) {
        std::size_t before = z.size();
        z = prefix_restricted_sumset(z, xl0, box, dense_cfg, w);
        if (z.size() == before) break;  // monotone: fixpoint reached
    }
    return z;
}

}  // namespace sslab
