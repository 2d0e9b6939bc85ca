#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sslab/ntt.hpp"
#include "sslab/types.hpp"
#include "sslab/util.hpp"

namespace sslab {

enum class SumsetEngine { dense, output_sensitive };

/// The dense engine is fully deterministic. The output-sensitive engine is
/// Las Vegas: with verify=true it never returns an incorrect set; internal
/// failures restart with a doubled size guess.
struct SumsetEngineConfig {
    SumsetEngine engine = SumsetEngine::dense;
    std::uint64_t seed = 0;
    bool verify = true;
};

// Width limit for packed vectors: (2t+1)^d must stay below 2^62.
inline constexpr Coord kEncodeWidthMax = Coord{1} << 62;

namespace detail {

// Dense engine strategy thresholds.
inline constexpr std::uint64_t kDirectPairCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDenseRangeCap = std::uint64_t{1} << 23;
// Output-sensitive engine guards (exactness of 128-bit moment arithmetic).
inline constexpr std::uint64_t kOsValueCap = std::uint64_t{1} << 44;
inline constexpr std::uint64_t kOsPairCap = std::uint64_t{1} << 35;
inline constexpr std::uint64_t kOsPrimeCap = std::uint64_t{1} << 21;

inline std::vector<u64> direct_sumset_1d(const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> out;
    out.reserve(std::min<std::size_t>(a.size() * b.size(), a.size() + b.size() + 1024));
    for (u64 x : a)
        for (u64 y : b) out.push_back(x + y);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Indicator-array convolution over the full value range.
inline std::vector<u64> dense_sumset_1d(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.empty() || b.empty()) return {};
    if (static_cast<u128>(a.size()) * b.size() <= kDirectPairCap)
        return direct_sumset_1d(a, b);
    u64 range = a.back() + b.back() + 1;
    if (range > kDenseRangeCap)
        throw std::length_error(
            "dense sumset engine: value range " + std::to_string(range) +
            " exceeds cap; use the output-sensitive engine");
    std::vector<u64> fa(a.back() + 1, 0), fb(b.back() + 1, 0);
    for (u64 x : a) fa[x] = 1;
    for (u64 x : b) fb[x] = 1;
    std::vector<u64> c = convolve_counts(fa, fb);
    std::vector<u64> out;
    for (u64 v = 0; v < c.size(); ++v)
        if (c[v]) out.push_back(v);
    return out;
}

struct OsClassData {
    std::vector<u64> h1;    // exact pair counts per residue class
    std::vector<u128> hx;   // exact first moment (sum of pair values)
    std::vector<u128> hx2;  // exact second moment
};

/// One cyclic convolution round mod a prime p: counting, first and second
/// moment arrays of A and B convolved pairwise.
inline OsClassData os_class_moments(const std::vector<u64>& a, const std::vector<u64>& b,
                                    u64 p) {
    auto build = [&](const std::vector<u64>& v, int power, auto field) {
        using F = decltype(field);
        std::vector<u64> arr(p, 0);
        for (u64 x : v) {
            u64 w = F::one();
            u64 xr = F::to_rep(x);
            for (int q = 0; q < power; ++q) w = F::mul(w, xr);
            arr[x % p] = F::add(arr[x % p], w);
        }
        return arr;
    };
    auto fold = [&](std::vector<u64> lin, auto field) {
        using F = decltype(field);
        lin.resize(2 * p - 1, 0);
        for (std::size_t i = p; i < lin.size(); ++i)
            lin[i - p] = F::add(lin[i - p], lin[i]);
        lin.resize(p);
        return lin;
    };
    // Per prime: convolve rep-form arrays with a shared transform length.
    auto round = [&](auto field) {
        using F = decltype(field);
        std::vector<u64> f1 = build(a, 0, field), fx = build(a, 1, field),
                         fx2 = build(a, 2, field);
        std::vector<u64> g1 = build(b, 0, field), gx = build(b, 1, field),
                         gx2 = build(b, 2, field);
        std::size_t n = conv_length(p, p);
        auto lift = [&](std::vector<u64>& v) {
            v.resize(n, 0);
            ntt_inplace<F>(v, false);
        };
        lift(f1), lift(fx), lift(fx2), lift(g1), lift(gx), lift(gx2);
        std::vector<u64> h1(n), hx(n), hx2(n);
        for (std::size_t i = 0; i < n; ++i) {
            h1[i] = F::mul(f1[i], g1[i]);
            hx[i] = F::add(F::mul(fx[i], g1[i]), F::mul(f1[i], gx[i]));
            u64 cross = F::mul(fx[i], gx[i]);
            hx2[i] = F::add(F::add(F::mul(fx2[i], g1[i]), F::mul(f1[i], gx2[i])),
                            F::add(cross, cross));
        }
        ntt_inplace<F>(h1, true);
        ntt_inplace<F>(hx, true);
        ntt_inplace<F>(hx2, true);
        h1.resize(2 * p - 1);
        hx.resize(2 * p - 1);
        hx2.resize(2 * p - 1);
        struct R {
            std::vector<u64> h1, hx, hx2;
        };
        return R{fold(std::move(h1), field), fold(std::move(hx), field),
                 fold(std::move(hx2), field)};
    };
    auto r1 = round(Goldilocks{});
    auto r2 = round(MontPrime62{});
    OsClassData out;
    out.h1.resize(p);
    out.hx.resize(p);
    out.hx2.resize(p);
    for (u64 r = 0; r < p; ++r) {
        out.h1[r] = static_cast<u64>(crt2(Goldilocks::from_rep(r1.h1[r]),
                                          MontPrime62::from_rep(r2.h1[r])));
        out.hx[r] = crt2(Goldilocks::from_rep(r1.hx[r]), MontPrime62::from_rep(r2.hx[r]));
        out.hx2[r] = crt2(Goldilocks::from_rep(r1.hx2[r]), MontPrime62::from_rep(r2.hx2[r]));
    }
    return out;
}

/// Output-sensitive sumset on encoded values. Las Vegas scheme: hash values
/// into residue classes mod a prime p ~ s*log(s). A class whose second
/// moment matches (zero variance, checked in exact arithmetic) holds exactly
/// one sum value, recovered as hx/h1. Classes with colliding sums are
/// enumerated directly from their preimages; if that work exceeds the
/// evidence budget the guess s doubles and the attempt restarts.
inline std::vector<u64> os_sumset_1d(const std::vector<u64>& a, const std::vector<u64>& b,
                                     std::uint64_t seed, bool verify) {
    const u128 pairs = static_cast<u128>(a.size()) * b.size();
    if (pairs == 0) return {};
    if (pairs > kOsPairCap)
        throw std::length_error("output-sensitive sumset engine: |A|*|B| exceeds guard");
    if (a.back() > kOsValueCap || b.back() > kOsValueCap)
        throw EncodingOverflow(
            "output-sensitive sumset engine: encoded values exceed 2^44 guard");

    std::mt19937_64 rng(splitmix64(seed ^ 0x5355e7ULL));
    // Lemma 2.1-shaped lower bound on |A+B| makes a better first guess than 2.
    u64 s = std::max<u64>(2, static_cast<u64>(a.size() + b.size()) - 1);

    for (;; s = saturating_mul(s, 2)) {
        if (static_cast<u128>(s) >= pairs) return direct_sumset_1d(a, b);
        u64 target = saturating_mul(4 * s, std::max<u64>(1, ceil_log2(s)));
        if (target >= kOsPrimeCap) return direct_sumset_1d(a, b);
        // Seeded jitter keeps concurrent calls with distinct seeds independent.
        u64 jitter = std::uniform_int_distribution<u64>(0, target - 1)(rng);
        u64 p = next_prime_at_least(std::min<u64>(target + jitter, kOsPrimeCap));

        OsClassData cd = os_class_moments(a, b, p);

        std::vector<u64> out;
        std::vector<u64> dirty;
        bool ok = true;
        for (u64 r = 0; r < p && ok; ++r) {
            if (cd.h1[r] == 0) continue;
            U256 lhs = mul_u128(cd.h1[r], cd.hx2[r]);
            U256 rhs = mul_u128(cd.hx[r], cd.hx[r]);
            if (lhs == rhs) {
                u128 c = cd.hx[r] / cd.h1[r];
                out.push_back(static_cast<u64>(c));
            } else {
                dirty.push_back(r);
                // With p ~ 4*s*log(s) and |A+B| <= s, colliding classes are
                // rare; far more is evidence the guess was too small.
                if (dirty.size() > s / 4 + 16) ok = false;
            }
        }
        if (!ok) continue;

        if (!dirty.empty()) {
            // Enumerate preimages of colliding classes: bucket B by residue.
            std::vector<std::vector<u64>> bucket(p);
            for (u64 y : b) bucket[y % p].push_back(y);
            u64 work = 0;
            const u64 work_cap = 64 * s + 4096;
            for (u64 r : dirty) {
                for (u64 x : a) {
                    u64 rho = (r + p - x % p) % p;
                    for (u64 y : bucket[rho]) {
                        out.push_back(x + y);
                        if (++work > work_cap) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
                if (!ok) break;
            }
            if (!ok) continue;
        }

        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());

        if (verify) {
            // Spot-check recovered values by witness decomposition.
            std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
            for (int i = 0; i < 32 && !out.empty(); ++i) {
                u64 c = out[pick(rng)];
                bool found = false;
                for (u64 x : a) {
                    if (x > c) break;
                    if (std::binary_search(b.begin(), b.end(), c - x)) {
                        found = true;
                        break;
                    }
                }
                if (!found)
                    throw std::logic_error("output-sensitive engine: witness check failed");
            }
        }
        return out;
    }
}

inline std::vector<u64> pointset_to_u64(const PointSet& a) {
    std::vector<u64> v;
    v.reserve(a.size());
    for (Coord c : a.flat()) v.push_back(static_cast<u64>(c));
    return v;
}

}  // namespace detail

/// Pack d-dimensional points into base-(2t+1) integers: phi(x) = sum of
/// x[i] * (2t+1)^i. Addition of two encodings with per-coordinate sums
/// bounded by 2t is carry-free, so sumsets commute with the encoding.
inline PointSet encode_points(const PointSet& a, Coord t) {
    if (t < 0) throw std::invalid_argument("encode_points: t must be nonnegative");
    const int d = a.dim();
    const Coord base = 2 * t + 1;
    Coord cap = 1;
    for (int j = 0; j < d; ++j) {
        if (cap > kEncodeWidthMax / base)
            throw EncodingOverflow(
                "encode_points: (2t+1)^d exceeds the integer width; "
                "fall back to direct d-dimensional merging");
        cap *= base;
    }
    std::vector<Coord> flat;
    flat.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto p = a[i];
        Coord v = 0, w = 1;
        for (int j = 0; j < d; ++j) {
            if (p[j] > t) throw std::invalid_argument("encode_points: coordinate exceeds t");
            v += p[j] * w;
            w *= base;
        }
        flat.push_back(v);
    }
    return PointSet::from_flat(1, std::move(flat));
}

inline PointSet decode_points(const PointSet& e, Coord t, int d) {
    if (e.dim() != 1) throw std::invalid_argument("decode_points: input must be 1-d");
    if (d < 1) throw std::invalid_argument("decode_points: d must be >= 1");
    const Coord base = 2 * t + 1;
    Coord cap = 1;
    for (int j = 0; j < d; ++j) {
        if (cap > kEncodeWidthMax / base)
            throw EncodingOverflow("decode_points: (2t+1)^d exceeds the integer width");
        cap *= base;
    }
    std::vector<Coord> flat;
    flat.reserve(e.size() * d);
    for (std::size_t i = 0; i < e.size(); ++i) {
        Coord v = e[i][0];
        if (v >= cap) throw std::invalid_argument("decode_points: value out of range");
        for (int j = 0; j < d; ++j) {
            flat.push_back(v % base);
            v /= base;
        }
    }
    return PointSet::from_flat(d, std::move(flat));
}

/// Exact sumset {a+b : a in A, b in B}. Both engines return identical sets;
/// the dense engine is the deterministic correctness anchor.
inline PointSet sumset(const PointSet& a, const PointSet& b,
                       const SumsetEngineConfig& cfg = {}, WorkCounters* w = nullptr) {
    if (a.dim() != b.dim()) throw std::invalid_argument("sumset: dimension mismatch");
    const int d = a.dim();
    if (a.empty() || b.empty()) return PointSet(d);

    std::vector<detail::u64> va, vb;
    Coord tau = 0;
    if (d == 1) {
        va = detail::pointset_to_u64(a);
        vb = detail::pointset_to_u64(b);
    } else {
        tau = std::max(a.max_coord(), b.max_coord());
        va = detail::pointset_to_u64(encode_points(a, tau));
        vb = detail::pointset_to_u64(encode_points(b, tau));
    }
    std::vector<detail::u64> vc =
        cfg.engine == SumsetEngine::dense
            ? detail::dense_sumset_1d(va, vb)
            : detail::os_sumset_1d(va, vb, cfg.seed, cfg.verify);
    count_sumset(w, vc.size());

    std::vector<Coord> flat(vc.begin(), vc.end());
    PointSet enc = PointSet::from_flat(1, std::move(flat));
    if (d == 1) return enc;
    return decode_points(enc, tau, d);
}

}  // namespace sslab
