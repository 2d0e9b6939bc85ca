#pragma once

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "sslab/util.hpp"

namespace sslab {

inline int lex_compare(std::span<const Coord> a, std::span<const Coord> b) {
    assert(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

/// Target box [0..t]^k x [0..inf)^(d-k): only the first `capped` coordinates
/// are restricted to [0..t].
struct Box {
    int dim = 1;
    Coord t = 0;
    int capped = 0;

    Box() = default;
    Box(int d, Coord t_, int k) : dim(d), t(t_), capped(k) {
        if (d < 1) throw std::invalid_argument("Box: dim must be >= 1");
        if (k < 0 || k > d) throw std::invalid_argument("Box: need 0 <= capped <= dim");
        if (t_ < 0) throw std::invalid_argument("Box: t must be nonnegative");
    }
    static Box full(int d, Coord t_) { return Box(d, t_, d); }

    bool contains(std::span<const Coord> p) const {
        assert(static_cast<int>(p.size()) == dim);
        for (int j = 0; j < dim; ++j) {
            if (p[j] < 0) return false;
            if (j < capped && p[j] > t) return false;
        }
        return true;
    }
};

/// A deduplicated set of d-dimensional nonnegative integer points, kept in
/// strictly increasing lexicographic order. Storage is a flat row-major
/// array; points are accessed as spans of length dim.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("PointSet: dim must be >= 1");
    }

    int dim() const { return dim_; }
    std::size_t size() const { return flat_.size() / dim_; }
    bool empty() const { return flat_.empty(); }

    std::span<const Coord> operator[](std::size_t i) const {
        return {flat_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }
    const std::vector<Coord>& flat() const { return flat_; }

    /// Append a point that is lexicographically greater than the current last.
    void append(std::span<const Coord> p) {
        assert(static_cast<int>(p.size()) == dim_);
        assert(empty() || lex_compare((*this)[size() - 1], p) < 0);
        flat_.insert(flat_.end(), p.begin(), p.end());
    }
    void append(std::initializer_list<Coord> p) {
        append(std::span<const Coord>(p.begin(), p.size()));
    }

    bool contains(std::span<const Coord> p) const {
        std::size_t lo = 0, hi = size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            int c = lex_compare((*this)[mid], p);
            if (c == 0) return true;
            if (c < 0)
                lo = mid + 1;
            else
                hi = mid;
        }
        return false;
    }

    bool operator==(const PointSet& o) const { return dim_ == o.dim_ && flat_ == o.flat_; }
    bool operator!=(const PointSet& o) const { return !(*this == o); }

    /// Build from arbitrary (possibly unsorted, duplicated) flat data.
    static PointSet from_flat(int dim, std::vector<Coord> flat) {
        if (dim < 1) throw std::invalid_argument("PointSet: dim must be >= 1");
        if (flat.size() % dim != 0)
            throw std::invalid_argument("PointSet: flat size not a multiple of dim");
        for (Coord c : flat)
            if (c < 0) throw std::invalid_argument("PointSet: coordinates must be nonnegative");
        PointSet s(dim);
        std::size_t n = flat.size() / dim;
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        auto at = [&](std::size_t i) {
            return std::span<const Coord>(flat.data() + i * dim, static_cast<std::size_t>(dim));
        };
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return lex_compare(at(a), at(b)) < 0; });
        s.flat_.reserve(flat.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0 && lex_compare(at(idx[k - 1]), at(idx[k])) == 0) continue;
            auto p = at(idx[k]);
            s.flat_.insert(s.flat_.end(), p.begin(), p.end());
        }
        return s;
    }

    /// 1-d convenience.
    static PointSet of_values(std::vector<Coord> values) {
        return from_flat(1, std::move(values));
    }
    static PointSet of_points(int dim, const std::vector<std::vector<Coord>>& pts) {
        std::vector<Coord> flat;
        flat.reserve(pts.size() * dim);
        for (const auto& p : pts) {
            if (static_cast<int>(p.size()) != dim)
                throw std::invalid_argument("PointSet: point has wrong dimension");
            flat.insert(flat.end(), p.begin(), p.end());
        }
        return from_flat(dim, std::move(flat));
    }
    static PointSet zero(int dim) {
        PointSet s(dim);
        s.flat_.assign(dim, 0);
        return s;
    }

    Coord max_coord() const {
        Coord m = 0;
        for (Coord c : flat_) m = std::max(m, c);
        return m;
    }

private:
    int dim_ = 1;
    std::vector<Coord> flat_;
};

/// Merge two sorted point sets into their union.
inline PointSet set_union(const PointSet& a, const PointSet& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("set_union: dimension mismatch");
    PointSet out(a.dim());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = lex_compare(a[i], b[j]);
        if (c < 0)
            out.append(a[i++]);
        else if (c > 0)
            out.append(b[j++]);
        else {
            out.append(a[i]);
            ++i;
            ++j;
        }
    }
    while (i < a.size()) out.append(a[i++]);
    while (j < b.size()) out.append(b[j++]);
    return out;
}

inline PointSet intersect_box(const PointSet& a, const Box& box) {
    if (a.dim() != box.dim) throw std::invalid_argument("intersect_box: dimension mismatch");
    PointSet out(a.dim());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (box.contains(a[i])) out.append(a[i]);
    return out;
}

/// Translate a sorted set by a nonnegative vector; lexicographic order is
/// preserved, so the result needs no re-sort.
inline PointSet translate(const PointSet& a, std::span<const Coord> x) {
    assert(static_cast<int>(x.size()) == a.dim());
    PointSet out(a.dim());
    std::vector<Coord> buf(a.dim());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto p = a[i];
        for (int j = 0; j < a.dim(); ++j) buf[j] = p[j] + x[j];
        out.append(buf);
    }
    return out;
}

/// Multiset of items X in [0..t]^d: distinct points in lexicographic order,
/// each with a multiplicity >= 1. n() counts items with multiplicity.
class ItemMultiset {
public:
    ItemMultiset() = default;
    explicit ItemMultiset(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("ItemMultiset: dim must be >= 1");
    }

    int dim() const { return dim_; }
    std::size_t distinct_size() const { return points_.size(); }
    std::int64_t n() const { return total_; }
    bool empty() const { return total_ == 0; }

    std::span<const Coord> point(std::size_t i) const { return points_[i]; }
    std::int64_t multiplicity(std::size_t i) const { return counts_[i]; }

    /// Append a distinct point in lexicographic order.
    void append(std::span<const Coord> p, std::int64_t count) {
        assert(static_cast<int>(p.size()) == dim_);
        if (count < 1) throw std::invalid_argument("ItemMultiset: multiplicity must be >= 1");
        assert(points_.empty() || lex_compare(points_[points_.size() - 1], p) < 0);
        points_.append(p);
        counts_.push_back(count);
        total_ += count;
    }

    bool operator==(const ItemMultiset& o) const {
        return dim_ == o.dim_ && points_ == o.points_ && counts_ == o.counts_;
    }
    bool operator!=(const ItemMultiset& o) const { return !(*this == o); }

    /// Build from raw (point, multiplicity) data; merges duplicates.
    static ItemMultiset from_raw(int dim, const std::vector<std::vector<Coord>>& pts,
                                 const std::vector<std::int64_t>& counts = {}) {
        if (dim < 1) throw std::invalid_argument("ItemMultiset: dim must be >= 1");
        if (!counts.empty() && counts.size() != pts.size())
            throw std::invalid_argument("ItemMultiset: counts size mismatch");
        std::vector<std::size_t> idx(pts.size());
        std::iota(idx.begin(), idx.end(), 0);
        for (const auto& p : pts) {
            if (static_cast<int>(p.size()) != dim)
                throw std::invalid_argument("ItemMultiset: point has wrong dimension");
            for (Coord c : p)
                if (c < 0)
                    throw std::invalid_argument("ItemMultiset: coordinates must be nonnegative");
        }
        auto cmp = [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(pts[a].begin(), pts[a].end(), pts[b].begin(),
                                                pts[b].end());
        };
        std::sort(idx.begin(), idx.end(), cmp);
        ItemMultiset m(dim);
        for (std::size_t k = 0; k < idx.size();) {
            std::size_t run = k;
            std::int64_t c = 0;
            while (run < idx.size() && pts[idx[run]] == pts[idx[k]]) {
                c += counts.empty() ? 1 : counts[idx[run]];
                ++run;
            }
            m.append(std::span<const Coord>(pts[idx[k]].data(), dim), c);
            k = run;
        }
        return m;
    }

    /// 1-d convenience: one entry per listed value, duplicates merged.
    static ItemMultiset of_values(const std::vector<Coord>& values) {
        std::vector<std::vector<Coord>> pts;
        pts.reserve(values.size());
        for (Coord v : values) pts.push_back({v});
        return from_raw(1, pts);
    }

    /// The underlying distinct points as a set.
    const PointSet& support() const { return points_; }

private:
    int dim_ = 1;
    PointSet points_{1};
    std::vector<std::int64_t> counts_;
    std::int64_t total_ = 0;
};

}  // namespace sslab
