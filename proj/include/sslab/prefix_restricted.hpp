#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sslab/sumset.hpp"
#include "sslab/types.hpp"
#include "sslab/util.hpp"

namespace sslab {

struct BlockRange {
    std::size_t begin = 0, end = 0;  // half-open range into the key order
    Coord min_key = 0, max_key = 0;
    std::size_t size() const { return end - begin; }
};

struct BBlock : BlockRange {
    bool heavy = false;
    Coord pivot = 0;  // meaningful only when heavy
};

/// The A_1..A_g / B_1..B_g decomposition keyed on one coordinate:
///  (1) A-blocks are non-strictly increasing in key,
///  (2) B-blocks are strictly separated (no key value spans two blocks),
///  (3) every A-block has size <= ceil(2|A|/g),
///  (4) every B-block is light (size <= ceil(2|B|/g)) or heavy (a single
///      key value owned by a pivot), and each pivot z has an A-boundary
///      separating keys <= t-z from keys > t-z.
struct BlockPartition {
    int key_coord = 0;
    std::size_t g = 2;  // requested block-count bound; counts never exceed it
    std::vector<std::size_t> a_order, b_order;
    std::vector<BlockRange> a_blocks;
    std::vector<BBlock> b_blocks;
};

/// Drop every a in A with no partner b such that a+b lies in the box (and
/// symmetrically for B). (A'+B') and (A+B) agree inside the box.
inline std::pair<PointSet, PointSet> prefilter_compatible(const PointSet& a, const PointSet& b,
                                                          const Box& box) {
    if (a.dim() != b.dim() || a.dim() != box.dim)
        throw std::invalid_argument("prefilter_compatible: dimension mismatch");
    const int k = box.capped;
    if (k == 0 || a.empty() || b.empty()) return {a, b};
    const Coord t = box.t;

    auto filter = [&](const PointSet& keep_from, const PointSet& other) {
        PointSet out(keep_from.dim());
        if (k == 1) {
            Coord other_min = other[0][0];
            for (std::size_t i = 1; i < other.size(); ++i)
                other_min = std::min(other_min, other[i][0]);
            for (std::size_t i = 0; i < keep_from.size(); ++i)
                if (keep_from[i][0] + other_min <= t) out.append(keep_from[i]);
            return out;
        }
        if (k == 2) {
            // other is lex-sorted: coordinate 0 ascending; sweep with a
            // prefix minimum over coordinate 1.
            std::vector<Coord> c0(other.size()), prefmin1(other.size());
            for (std::size_t j = 0; j < other.size(); ++j) {
                c0[j] = other[j][0];
                prefmin1[j] = other[j][1];
                if (j > 0) prefmin1[j] = std::min(prefmin1[j], prefmin1[j - 1]);
            }
            for (std::size_t i = 0; i < keep_from.size(); ++i) {
                auto p = keep_from[i];
                auto it = std::upper_bound(c0.begin(), c0.end(), t - p[0]);
                if (it == c0.begin()) continue;
                std::size_t j = static_cast<std::size_t>(it - c0.begin()) - 1;
                if (p[1] + prefmin1[j] <= t) out.append(keep_from[i]);
            }
            return out;
        }
        // k >= 3: plain dominance scan.
        for (std::size_t i = 0; i < keep_from.size(); ++i) {
            auto p = keep_from[i];
            bool hit = false;
            for (std::size_t j = 0; j < other.size() && !hit; ++j) {
                auto q = other[j];
                hit = true;
                for (int c = 0; c < k; ++c)
                    if (p[c] + q[c] > t) {
                        hit = false;
                        break;
                    }
            }
            if (hit) out.append(keep_from[i]);
        }
        return out;
    };
    return {filter(a, b), filter(b, a)};
}

namespace detail {

inline std::vector<std::size_t> key_order(const PointSet& s, int key) {
    std::vector<std::size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return s[x][key] < s[y][key]; });
    return idx;
}

}  // namespace detail

/// Construct the Theorem-4.1-style partition keyed on coordinate
/// box.capped - 1. Degenerate inputs yield fewer blocks.
inline BlockPartition build_block_partition(const PointSet& a, const PointSet& b, std::size_t g,
                                            const Box& box) {
    if (box.capped < 1)
        throw std::invalid_argument("build_block_partition: box must cap a coordinate");
    if (g < 2) throw std::invalid_argument("build_block_partition: g must be >= 2");
    BlockPartition bp;
    bp.key_coord = box.capped - 1;
    bp.g = g;
    bp.a_order = detail::key_order(a, bp.key_coord);
    bp.b_order = detail::key_order(b, bp.key_coord);
    const Coord t = box.t;
    auto akey = [&](std::size_t pos) { return a[bp.a_order[pos]][bp.key_coord]; };
    auto bkey = [&](std::size_t pos) { return b[bp.b_order[pos]][bp.key_coord]; };

    // B side first: identify pivots (key values with >= 2|B|/g members).
    std::vector<Coord> pivots;
    if (!b.empty()) {
        const std::size_t nb = b.size();
        const std::size_t light_cap = (2 * nb + g - 1) / g;  // ceil(2|B|/g)
        std::size_t run = 0;
        std::size_t light_begin = 0, light_size = 0;
        auto flush_light = [&](std::size_t end_pos) {
            if (light_size == 0) return;
            BBlock blk;
            blk.begin = light_begin;
            blk.end = end_pos;
            blk.min_key = bkey(blk.begin);
            blk.max_key = bkey(blk.end - 1);
            blk.heavy = false;
            bp.b_blocks.push_back(blk);
            light_size = 0;
        };
        while (run < nb) {
            std::size_t run_end = run;
            while (run_end < nb && bkey(run_end) == bkey(run)) ++run_end;
            std::size_t len = run_end - run;
            if (len * g >= 2 * nb) {
                flush_light(run);
                BBlock blk;
                blk.begin = run;
                blk.end = run_end;
                blk.min_key = blk.max_key = bkey(run);
                blk.heavy = true;
                blk.pivot = bkey(run);
                pivots.push_back(blk.pivot);
                bp.b_blocks.push_back(blk);
            } else {
                if (light_size > 0 && light_size + len > light_cap) flush_light(run);
                if (light_size == 0) light_begin = run;
                light_size += len;
            }
            run = run_end;
        }
        flush_light(nb);
    }

    // A side: consecutive chunks of <= ceil(2|A|/g), then one extra cut per
    // pivot z whose threshold t - z falls strictly inside a chunk.
    if (!a.empty()) {
        const std::size_t na = a.size();
        const std::size_t chunk = (2 * na + g - 1) / g;  // ceil(2|A|/g)
        std::vector<std::size_t> cuts;
        for (std::size_t pos = 0; pos < na; pos += chunk) cuts.push_back(pos);
        cuts.push_back(na);
        for (Coord z : pivots) {
            Coord thr = t - z;
            // first position with key > thr
            std::size_t lo = 0, hi = na;
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (akey(mid) <= thr)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo > 0 && lo < na) cuts.push_back(lo);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            BlockRange blk;
            blk.begin = cuts[i];
            blk.end = cuts[i + 1];
            blk.min_key = akey(blk.begin);
            blk.max_key = akey(blk.end - 1);
            bp.a_blocks.push_back(blk);
        }
    }
    assert(bp.a_blocks.size() <= g && bp.b_blocks.size() <= g);
    return bp;
}

namespace detail {

inline PointSet gather(const PointSet& s, const std::vector<std::size_t>& order,
                       std::size_t begin, std::size_t end) {
    std::vector<Coord> flat;
    flat.reserve((end - begin) * s.dim());
    for (std::size_t pos = begin; pos < end; ++pos) {
        auto p = s[order[pos]];
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return PointSet::from_flat(s.dim(), std::move(flat));
}

inline double pr_budget(std::size_t na, std::size_t nb, std::uint64_t s, int k, int d) {
    // c_b * (|A| + |B| + (|A||B|)^(1-1/(k+1)) * s^(1/(k+1))) * log2(|A||B|)^(2d)
    const double cb = 64.0;
    double ab = static_cast<double>(na) * static_cast<double>(nb);
    double main = static_cast<double>(na) + static_cast<double>(nb) +
                  std::pow(ab, 1.0 - 1.0 / (k + 1)) * std::pow(static_cast<double>(s),
                                                               1.0 / (k + 1));
    double lg = std::max(2.0, std::log2(std::max(2.0, ab)));
    return cb * main * std::pow(lg, 2.0 * d);
}

PointSet prefix_restricted_impl(const PointSet& a, const PointSet& b, const Box& box,
                                const SumsetEngineConfig& cfg, WorkCounters* w);

/// Exhaustive fallback; also the terminal guess once s reaches |A||B|.
inline PointSet pr_enumerate(const PointSet& a, const PointSet& b, const Box& box) {
    std::vector<Coord> flat;
    const int d = a.dim();
    std::vector<Coord> sum(d);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            auto p = a[i], q = b[j];
            for (int c = 0; c < d; ++c) sum[c] = p[c] + q[c];
            if (box.contains(sum)) flat.insert(flat.end(), sum.begin(), sum.end());
        }
    return PointSet::from_flat(d, std::move(flat));
}

inline PointSet prefix_restricted_attempt(const PointSet& a, const PointSet& b, const Box& box,
                                          std::uint64_t s, const SumsetEngineConfig& cfg,
                                          WorkCounters* w, bool& completed) {
    const int k = box.capped;
    const int d = box.dim;
    const Coord t = box.t;
    completed = false;

    double budget = pr_budget(a.size(), b.size(), s, k, d);
    std::uint64_t work = a.size() + b.size();

    double gf = std::pow(static_cast<double>(a.size()) * static_cast<double>(b.size()) /
                             static_cast<double>(s),
                         1.0 / (k + 1));
    std::size_t g = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(gf)));
    BlockPartition bp = build_block_partition(a, b, g, box);
    work += bp.a_blocks.size() + bp.b_blocks.size();

    const bool dbg = debug_asserts_enabled();
    // Per-chain bookkeeping for the debug invariants: at most one partially-
    // but-not-totally relevant pair, and strictly increasing key spans along
    // totally relevant pairs of a chain.
    std::map<std::ptrdiff_t, int> partial_per_chain;
    std::map<std::ptrdiff_t, Coord> chain_last_max;

    std::vector<Coord> out_flat;
    Box child_box(d, t, k - 1);
    for (std::size_t i = 0; i < bp.a_blocks.size(); ++i) {
        const auto& ab = bp.a_blocks[i];
        for (std::size_t j = 0; j < bp.b_blocks.size(); ++j) {
            const auto& bb = bp.b_blocks[j];
            if (ab.min_key + bb.min_key > t) break;  // b_blocks ascend in min_key
            work += 1;
            bool total = ab.max_key + bb.max_key <= t;
            if (dbg) {
                std::ptrdiff_t delta = static_cast<std::ptrdiff_t>(i) -
                                       static_cast<std::ptrdiff_t>(j);
                if (!total) {
                    if (++partial_per_chain[delta] > 1)
                        throw std::logic_error(
                            "chain invariant violated: two partial pairs on one chain");
                } else {
                    auto it = chain_last_max.find(delta);
                    if (it != chain_last_max.end() && it->second >= ab.min_key + bb.min_key)
                        throw std::logic_error(
                            "chain invariant violated: outputs not disjoint along chain");
                    chain_last_max[delta] = ab.max_key + bb.max_key;
                }
            }
            PointSet sa = gather(a, bp.a_order, ab.begin, ab.end);
            PointSet sb = gather(b, bp.b_order, bb.begin, bb.end);
            if (total) {
                PointSet c = prefix_restricted_impl(sa, sb, child_box, cfg, w);
                work += c.size();
                out_flat.insert(out_flat.end(), c.flat().begin(), c.flat().end());
            } else {
                // The one partially-but-not-totally relevant pair per chain:
                // the trivial |A_i| x |B_j| bound.
                PointSet c = pr_enumerate(sa, sb, box);
                work += sa.size() * sb.size();
                out_flat.insert(out_flat.end(), c.flat().begin(), c.flat().end());
            }
            if (static_cast<double>(work) > budget) return PointSet(d);
        }
    }
    completed = true;
    if (w) w->pr_last_work = work;
    return PointSet::from_flat(d, std::move(out_flat));
}

inline PointSet prefix_restricted_impl(const PointSet& a, const PointSet& b, const Box& box,
                                       const SumsetEngineConfig& cfg, WorkCounters* w) {
    count_pr_node(w);
    const int d = box.dim;
    if (a.empty() || b.empty()) return PointSet(d);
    if (box.capped == 0) {
        PointSet c = sumset(a, b, cfg, w);
        if (w) w->pr_last_work = c.size();
        return c;
    }

    PointSet af = a, bf = b;
    // Orthogonal-range prefilter; skipped for high k on large inputs where
    // the dominance scan would dominate the run.
    if (box.capped <= 2 ||
        static_cast<std::uint64_t>(a.size()) * b.size() <= (std::uint64_t{1} << 24)) {
        auto [fa, fb] = prefilter_compatible(a, b, box);
        af = std::move(fa);
        bf = std::move(fb);
    }
    if (af.empty() || bf.empty()) return PointSet(d);

    const std::uint64_t pair_count =
        static_cast<std::uint64_t>(af.size()) * static_cast<std::uint64_t>(bf.size());
    for (std::uint64_t s = 2;; s = saturating_mul(s, 2)) {
        if (s >= pair_count) {
            if (w) w->pr_last_work = pair_count;
            return pr_enumerate(af, bf, box);
        }
        bool completed = false;
        PointSet c = prefix_restricted_attempt(af, bf, box, s, cfg, w, completed);
        if (completed) return c;
    }
}

}  // namespace detail

/// C = (A+B) restricted to [0..t]^k x [0..inf)^(d-k), computed exactly in
/// output-sensitive time by guessing |C| and recursing over the block
/// partition. Guesses that exceed their work budget are discarded whole.
inline PointSet prefix_restricted_sumset(const PointSet& a, const PointSet& b, const Box& box,
                                         const SumsetEngineConfig& cfg = {},
                                         WorkCounters* w = nullptr) {
    if (a.dim() != b.dim() || a.dim() != box.dim)
        throw std::invalid_argument("prefix_restricted_sumset: dimension mismatch");
    return detail::prefix_restricted_impl(a, b, box, cfg, w);
}

}  // namespace sslab
