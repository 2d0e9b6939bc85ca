#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "sslab/prefix_restricted.hpp"
#include "sslab/types.hpp"
#include "sslab/util.hpp"

namespace sslab {

/// Derandomized perfect-hash family from Reed-Solomon codes. Each item index
/// is written in base p; h_i evaluates the resulting degree-<=D polynomial
/// at i over F_p. Distinct items collide under at most D of the p functions,
/// so any m items are hashed injectively by some member.
struct RSHashFamily {
    std::uint64_t p = 2;       // field order == family size == bucket count
    unsigned degree = 0;       // D = ceil(log_p n_items)
    unsigned arity = 1;        // m: size of the subsets hashed perfectly
    std::uint64_t n_items = 1; // canonical index range [0, n_items)

    std::uint64_t hash(std::uint64_t func, std::uint64_t item_index) const {
        // Horner evaluation of the base-p digit polynomial at point `func`.
        std::uint64_t coeff[64];
        unsigned nc = 0;
        std::uint64_t v = item_index;
        for (unsigned j = 0; j <= degree; ++j) {
            coeff[nc++] = v % p;
            v /= p;
        }
        std::uint64_t acc = 0;
        for (unsigned j = nc; j-- > 0;) acc = (acc * func + coeff[j]) % p;
        return acc;
    }
};

/// Smallest prime in [m^2 ceil(log2 n), 2 m^2 ceil(log2 n)] (nonempty by
/// Bertrand's postulate); the log factor is clamped to >= 1 so degenerate
/// inputs still yield a valid field.
inline RSHashFamily build_rs_family(std::uint64_t n_items, unsigned m) {
    if (n_items < 1) throw std::invalid_argument("build_rs_family: n_items must be >= 1");
    if (m < 1) throw std::invalid_argument("build_rs_family: m must be >= 1");
    std::uint64_t logn = std::max<std::uint64_t>(1, ceil_log2(n_items));
    std::uint64_t lo = saturating_mul(static_cast<std::uint64_t>(m) * m, logn);
    RSHashFamily fam;
    fam.p = next_prime_at_least(lo);
    fam.arity = m;
    fam.n_items = n_items;
    // D = ceil(log_p n_items)
    unsigned d = 0;
    std::uint64_t reach = 1;
    while (reach < n_items) {
        reach = saturating_mul(reach, fam.p);
        ++d;
    }
    fam.degree = d;
    // Binom(m,2) * D < p guarantees a perfect hash for any m items.
    std::uint64_t bad = static_cast<std::uint64_t>(m) * (m - 1) / 2 * fam.degree;
    if (bad >= fam.p) throw std::logic_error("build_rs_family: family too small");
    return fam;
}

/// Uniformly random partition of the item copies into K parts, reproducible
/// from the seed. The multiset union of the parts equals the input.
inline std::vector<ItemMultiset> random_partition(const ItemMultiset& xs, std::size_t k,
                                                  std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("random_partition: K must be >= 1");
    std::mt19937_64 rng(splitmix64(seed));
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::vector<std::vector<std::int64_t>> counts(k);
    for (auto& c : counts) c.assign(xs.distinct_size(), 0);
    for (std::size_t i = 0; i < xs.distinct_size(); ++i)
        for (std::int64_t copy = 0; copy < xs.multiplicity(i); ++copy)
            counts[pick(rng)][i] += 1;
    std::vector<ItemMultiset> parts;
    parts.reserve(k);
    for (std::size_t part = 0; part < k; ++part) {
        ItemMultiset out(xs.dim());
        for (std::size_t i = 0; i < xs.distinct_size(); ++i)
            if (counts[part][i] > 0) out.append(xs.point(i), counts[part][i]);
        parts.push_back(std::move(out));
    }
    return parts;
}

namespace detail {

/// Exact fallback: fold item copies one at a time, capping inside the box.
/// Equals (Z + S(XL,t)) in the box since partial sums of nonnegative vectors
/// never leave it retroactively.
inline PointSet fold_large_sequential(const PointSet& z, const ItemMultiset& xl,
                                      const Box& box) {
    PointSet acc = intersect_box(z, box);
    for (std::size_t i = 0; i < xl.distinct_size(); ++i) {
        auto p = xl.point(i);
        for (std::int64_t c = 0; c < xl.multiplicity(i); ++c) {
            PointSet shifted = intersect_box(translate(acc, p), box);
            std::size_t before = acc.size();
            acc = set_union(acc, shifted);
            if (acc.size() == before) break;
        }
    }
    return acc;
}

}  // namespace detail

// Beyond this many (hash function, bucket) pairs the derandomized family is
// not worth its setup and the exact sequential fold takes over.
inline constexpr std::uint64_t kLargeItemWorkCap = std::uint64_t{1} << 18;

/// Z' = (Z + S(XL, t)) in [0..t]^d for large items XL (every item exceeds
/// gamma*t in some coordinate, so any sum uses at most d/gamma of them).
/// Enumerates the Reed-Solomon family; for each member, folds the buckets
/// into Z by prefix-restricted sumsets. Deterministic family, exact output.
inline PointSet combine_large_items(const PointSet& z, const ItemMultiset& xl, Coord t,
                                    Rational gamma, const SumsetEngineConfig& cfg = {},
                                    WorkCounters* w = nullptr) {
    if (z.dim() != xl.dim() && !xl.empty())
        throw std::invalid_argument("combine_large_items: dimension mismatch");
    const int d = z.dim();
    Box box = Box::full(d, t);
    if (xl.empty()) return intersect_box(z, box);
    if (gamma.num <= 0) throw std::invalid_argument("combine_large_items: gamma must be > 0");

    // Largeness precondition: some coordinate > gamma * t, exactly.
    for (std::size_t i = 0; i < xl.distinct_size(); ++i) {
        auto p = xl.point(i);
        bool large = false;
        for (int j = 0; j < d; ++j)
            if (static_cast<__int128>(p[j]) * gamma.den >
                static_cast<__int128>(t) * gamma.num)
                large = true;
        if (!large)
            throw std::invalid_argument("combine_large_items: item below the gamma*t threshold");
    }

    const std::uint64_t n_items = static_cast<std::uint64_t>(xl.n());
    // m = ceil(d / gamma), but a sum can also never use more copies than exist.
    __int128 m_paper = (static_cast<__int128>(d) * gamma.den + gamma.num - 1) / gamma.num;
    std::uint64_t m = static_cast<std::uint64_t>(
        std::min<__int128>(m_paper, static_cast<__int128>(n_items)));
    m = std::max<std::uint64_t>(1, m);

    RSHashFamily fam = build_rs_family(n_items, static_cast<unsigned>(m));
    std::uint64_t distinct_buckets = std::min<std::uint64_t>(fam.p, n_items + 1);
    if (saturating_mul(fam.p, distinct_buckets) > kLargeItemWorkCap)
        return detail::fold_large_sequential(z, xl, box);

    // Canonical index: lexicographic order of distinct points, copies get
    // consecutive indices.
    std::vector<std::size_t> copy_point;  // copy index -> distinct point index
    for (std::size_t i = 0; i < xl.distinct_size(); ++i)
        for (std::int64_t c = 0; c < xl.multiplicity(i); ++c) copy_point.push_back(i);

    PointSet z_boxed = intersect_box(z, box);
    PointSet result(d);
    std::vector<std::vector<Coord>> bucket_flat(fam.p);
    for (std::uint64_t h = 0; h < fam.p; ++h) {
        count_hashes(w, 1);
        for (auto& bf : bucket_flat) bf.clear();
        for (std::uint64_t idx = 0; idx < n_items; ++idx) {
            auto p = xl.point(copy_point[idx]);
            auto& bf = bucket_flat[fam.hash(h, idx)];
            bf.insert(bf.end(), p.begin(), p.end());
        }
        PointSet zh = z_boxed;
        for (std::uint64_t b = 0; b < fam.p; ++b) {
            if (bucket_flat[b].empty()) continue;  // adding {0} alone is the identity
            std::vector<Coord> flat = bucket_flat[b];
            flat.insert(flat.end(), static_cast<std::size_t>(d), 0);  // the point 0
            PointSet bucket = PointSet::from_flat(d, std::move(flat));
            zh = prefix_restricted_sumset(zh, bucket, box, cfg, w);
        }
        result = result.empty() ? zh : set_union(result, zh);
    }
    return result;
}

}  // namespace sslab
