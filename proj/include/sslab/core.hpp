#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sslab/types.hpp"
#include "sslab/util.hpp"

namespace sslab {

inline constexpr std::int64_t kNaiveOracleMaxItems = 24;
inline constexpr std::int64_t kUnboundedOracleMaxCells = std::int64_t{1} << 25;

/// Linear-time preprocessing: drops items outside [0..t]^d and the zero
/// vector, and caps each multiplicity at min over nonzero coordinates j of
/// floor(t / x[j]) -- more copies can never contribute a new sum inside the
/// box. Idempotent.
inline ItemMultiset preprocess_items(const std::vector<std::vector<Coord>>& raw, Coord t, int d,
                                     const std::vector<std::int64_t>& counts = {}) {
    if (d < 1) throw std::invalid_argument("preprocess_items: d must be >= 1");
    if (t < 0) throw std::invalid_argument("preprocess_items: t must be nonnegative");
    ItemMultiset all = ItemMultiset::from_raw(d, raw, counts);  // validates coords
    ItemMultiset out(d);
    std::vector<Coord> buf(d);
    for (std::size_t i = 0; i < all.distinct_size(); ++i) {
        auto p = all.point(i);
        bool keep = true, zero = true;
        std::int64_t cap = INT64_MAX;
        for (int j = 0; j < d; ++j) {
            if (p[j] > t) keep = false;
            if (p[j] > 0) {
                zero = false;
                cap = std::min(cap, t / p[j]);
            }
        }
        if (!keep || zero) continue;
        out.append(p, std::min(all.multiplicity(i), cap));
    }
    return out;
}

inline ItemMultiset preprocess_items(const ItemMultiset& x, Coord t) {
    std::vector<std::vector<Coord>> pts;
    std::vector<std::int64_t> counts;
    pts.reserve(x.distinct_size());
    for (std::size_t i = 0; i < x.distinct_size(); ++i) {
        auto p = x.point(i);
        pts.emplace_back(p.begin(), p.end());
        counts.push_back(x.multiplicity(i));
    }
    return preprocess_items(pts, t, x.dim(), counts);
}

/// The classic dynamic program: S <- {s, s + x : s in S} intersected with the
/// box, once per item copy. Exact for any dimension; cost O(|S(X,t)| * n).
inline PointSet bellman(const ItemMultiset& x, Coord t, WorkCounters* w = nullptr) {
    Box box = Box::full(x.dim(), t);
    PointSet s = PointSet::zero(x.dim());
    for (std::size_t i = 0; i < x.distinct_size(); ++i) {
        auto p = x.point(i);
        bool in_box = true;
        for (int j = 0; j < x.dim(); ++j)
            if (p[j] > t) in_box = false;
        if (!in_box) continue;
        for (std::int64_t c = 0; c < x.multiplicity(i); ++c) {
            PointSet shifted = intersect_box(translate(s, p), box);
            std::size_t before = s.size();
            s = set_union(s, shifted);
            count_sumset(w, s.size());
            if (s.size() == before) break;  // saturated for this item value
        }
    }
    return s;
}

/// Ground-truth oracle: enumerates all 2^n subsets. Guarded at n <= 24.
inline PointSet naive_oracle(const ItemMultiset& x, Coord t) {
    if (x.n() > kNaiveOracleMaxItems)
        throw std::invalid_argument("naive_oracle: more than 24 items");
    const int d = x.dim();
    std::vector<std::vector<Coord>> items;
    for (std::size_t i = 0; i < x.distinct_size(); ++i)
        for (std::int64_t c = 0; c < x.multiplicity(i); ++c)
            items.emplace_back(x.point(i).begin(), x.point(i).end());
    const std::size_t n = items.size();
    Box box = Box::full(d, t);
    std::vector<Coord> sum(d, 0), flat;
    // Gray-code walk: exactly one item toggles between consecutive masks.
    std::vector<bool> in(n, false);
    auto emit = [&] {
        if (box.contains(sum)) flat.insert(flat.end(), sum.begin(), sum.end());
    };
    emit();
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
        unsigned bit = static_cast<unsigned>(__builtin_ctzll(k));
        if (in[bit])
            for (int j = 0; j < d; ++j) sum[j] -= items[bit][j];
        else
            for (int j = 0; j < d; ++j) sum[j] += items[bit][j];
        in[bit] = !in[bit];
        emit();
    }
    return PointSet::from_flat(d, std::move(flat));
}

/// Ground truth for unbounded subset sums: dense reachability table over
/// [0..t]^d. Guarded by a cell budget.
inline PointSet unbounded_oracle(const ItemMultiset& x, Coord t) {
    const int d = x.dim();
    std::int64_t cells = 1;
    for (int j = 0; j < d; ++j) {
        cells = cells * (t + 1);
        if (cells > kUnboundedOracleMaxCells)
            throw std::invalid_argument("unbounded_oracle: dense table exceeds budget");
    }
    std::vector<std::int64_t> stride(d);
    stride[d - 1] = 1;
    for (int j = d - 2; j >= 0; --j) stride[j] = stride[j + 1] * (t + 1);
    std::vector<char> reach(static_cast<std::size_t>(cells), 0);
    reach[0] = 1;
    for (std::size_t i = 0; i < x.distinct_size(); ++i) {
        auto p = x.point(i);
        bool in_box = true, zero = true;
        std::int64_t off = 0;
        for (int j = 0; j < d; ++j) {
            if (p[j] > t) in_box = false;
            if (p[j] > 0) zero = false;
            off += p[j] * stride[j];
        }
        if (!in_box || zero) continue;
        // Ascending scan: cell - off is already final when visited.
        std::vector<Coord> q(d, 0);
        for (std::int64_t idx = 0; idx < cells; ++idx) {
            bool fits = true;
            for (int j = 0; j < d; ++j)
                if (q[j] + p[j] > t) fits = false;
            if (fits && reach[idx]) reach[idx + off] = 1;
            for (int j = d - 1; j >= 0; --j) {
                if (++q[j] <= t) break;
                q[j] = 0;
            }
        }
    }
    PointSet out(d);
    std::vector<Coord> q(d, 0);
    for (std::int64_t idx = 0; idx < cells; ++idx) {
        if (reach[idx]) out.append(q);
        for (int j = d - 1; j >= 0; --j) {
            if (++q[j] <= t) break;
            q[j] = 0;
        }
    }
    return out;
}

}  // namespace sslab
