#pragma once

// Exact integer convolutions via number-theoretic transforms over two
// word-size primes. Used by the sumset engines: counts and first/second
// moment arrays stay exact (single prime or CRT into 128 bits).

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace sslab::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// p = 2^64 - 2^32 + 1: 2-adicity 32, multiplicative generator 7.
/// Reduction uses 2^64 = 2^32 - 1 and 2^96 = -1 (mod p).
struct Goldilocks {
    static constexpr u64 mod = 0xffffffff00000001ULL;
    static constexpr u64 generator = 7;
    static constexpr unsigned two_adicity = 32;

    static u64 reduce(u128 x) {
        u64 lo = static_cast<u64>(x);
        u64 hi = static_cast<u64>(x >> 64);
        u64 hi_lo = hi & 0xffffffffULL;
        u64 hi_hi = hi >> 32;
        u64 t0 = lo - hi_hi;
        if (lo < hi_hi) t0 -= 0xffffffffULL;  // borrow: -2^64 == -(2^32 - 1)
        u64 t1 = hi_lo * 0xffffffffULL;
        u64 r = t0 + t1;
        if (r < t1) r += 0xffffffffULL;  // carry: +2^64 == +(2^32 - 1)
        if (r >= mod) r -= mod;
        return r;
    }
    static u64 to_rep(u64 x) { return x >= mod ? x % mod : x; }
    static u64 from_rep(u64 x) { return x; }
    static u64 add(u64 a, u64 b) {
        u64 s = a + b;
        if (s < a || s >= mod) s -= mod;
        return s;
    }
    static u64 sub(u64 a, u64 b) { return a >= b ? a - b : a + (mod - b); }
    static u64 mul(u64 a, u64 b) { return reduce(static_cast<u128>(a) * b); }
    static u64 one() { return 1; }
};

constexpr u64 mont_neg_inv(u64 mod) {
    u64 inv = mod;  // Newton: inv *= 2 - mod*inv doubles correct bits
    for (int i = 0; i < 6; ++i) inv *= 2 - mod * inv;
    return ~inv + 1;  // -mod^{-1} mod 2^64
}

/// p = 29 * 2^57 + 1 (< 2^62): 2-adicity 57, multiplicative generator 3.
/// Values are kept in Montgomery form.
struct MontPrime62 {
    static constexpr u64 mod = 4179340454199820289ULL;
    static constexpr u64 generator = 3;
    static constexpr unsigned two_adicity = 57;
    static constexpr u64 ninv = mont_neg_inv(mod);

    static u64 redc(u128 t) {
        u64 m = static_cast<u64>(t) * ninv;
        u128 u = t + static_cast<u128>(m) * mod;  // mod < 2^63: no overflow
        u64 r = static_cast<u64>(u >> 64);
        return r >= mod ? r - mod : r;
    }
    static u64 r2() {
        static const u64 v = [] {
            u64 r1 = (~u64{0}) % mod + 1;  // 2^64 mod p
            return static_cast<u64>(static_cast<u128>(r1) * r1 % mod);
        }();
        return v;
    }
    static u64 to_rep(u64 x) { return redc(static_cast<u128>(x % mod) * r2()); }
    static u64 from_rep(u64 x) { return redc(x); }
    static u64 add(u64 a, u64 b) {
        u64 s = a + b;
        if (s >= mod) s -= mod;
        return s;
    }
    static u64 sub(u64 a, u64 b) { return a >= b ? a - b : a + (mod - b); }
    static u64 mul(u64 a, u64 b) { return redc(static_cast<u128>(a) * b); }
    static u64 one() { return to_rep(1); }
};

template <class F>
u64 field_pow(u64 base_rep, u64 exp) {
    u64 r = F::one();
    while (exp) {
        if (exp & 1) r = F::mul(r, base_rep);
        base_rep = F::mul(base_rep, base_rep);
        exp >>= 1;
    }
    return r;
}

template <class F>
u64 field_inv(u64 x_rep) {
    return field_pow<F>(x_rep, F::mod - 2);
}

/// In-place iterative radix-2 NTT. a.size() must be a power of two not
/// exceeding 2^two_adicity. Values in rep form.
template <class F>
void ntt_inplace(std::vector<u64>& a, bool invert) {
    const std::size_t n = a.size();
    assert(std::has_single_bit(n));
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const unsigned logn = static_cast<unsigned>(std::countr_zero(n));
    assert(logn <= F::two_adicity);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 w = field_pow<F>(F::to_rep(F::generator), (F::mod - 1) / len);
        if (invert) w = field_inv<F>(w);
        for (std::size_t i = 0; i < n; i += len) {
            u64 wj = F::one();
            for (std::size_t j = 0; j < len / 2; ++j) {
                u64 u = a[i + j];
                u64 v = F::mul(a[i + j + len / 2], wj);
                a[i + j] = F::add(u, v);
                a[i + j + len / 2] = F::sub(u, v);
                wj = F::mul(wj, w);
            }
        }
    }
    if (invert) {
        u64 n_inv = field_inv<F>(F::to_rep(n % F::mod));
        for (auto& x : a) x = F::mul(x, n_inv);
    }
}

inline std::size_t conv_length(std::size_t na, std::size_t nb) {
    std::size_t need = na + nb - 1;
    return std::bit_ceil(need);
}

/// Linear convolution of plain-value arrays, reduced mod F::mod.
template <class F>
std::vector<u64> convolve_mod(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.empty() || b.empty()) return {};
    std::size_t out = a.size() + b.size() - 1;
    if (static_cast<u128>(a.size()) * b.size() <= 1024) {
        std::vector<u64> c(out, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            u64 ar = F::to_rep(a[i]);
            for (std::size_t j = 0; j < b.size(); ++j)
                c[i + j] = F::add(c[i + j], F::mul(ar, F::to_rep(b[j])));
        }
        for (auto& x : c) x = F::from_rep(x);
        return c;
    }
    std::size_t n = conv_length(a.size(), b.size());
    std::vector<u64> fa(n, 0), fb(n, 0);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = F::to_rep(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = F::to_rep(b[i]);
    ntt_inplace<F>(fa, false);
    ntt_inplace<F>(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] = F::mul(fa[i], fb[i]);
    ntt_inplace<F>(fa, true);
    fa.resize(out);
    for (auto& x : fa) x = F::from_rep(x);
    return fa;
}

/// Exact counting convolution: all true coefficients must stay below the
/// Goldilocks modulus (guaranteed up to 2^63 pair counts).
inline std::vector<u64> convolve_counts(const std::vector<u64>& a, const std::vector<u64>& b) {
    return convolve_mod<Goldilocks>(a, b);
}

/// CRT lift of (x mod p1, x mod p2) to the unique x < p1*p2.
inline u128 crt2(u64 r1, u64 r2) {
    // x = r1 + p1 * ((r2 - r1) * p1^{-1} mod p2)
    static const u64 p1_inv_rep = field_inv<MontPrime62>(MontPrime62::to_rep(
        Goldilocks::mod % MontPrime62::mod));
    u64 d = MontPrime62::sub(MontPrime62::to_rep(r2 % MontPrime62::mod),
                             MontPrime62::to_rep(r1 % MontPrime62::mod));
    u64 k = MontPrime62::from_rep(MontPrime62::mul(d, p1_inv_rep));
    return static_cast<u128>(r1) + static_cast<u128>(Goldilocks::mod) * k;
}

struct U256 {
    u128 hi = 0, lo = 0;
    friend bool operator==(const U256& a, const U256& b) = default;
    friend auto operator<=>(const U256& a, const U256& b) {
        if (a.hi != b.hi) return a.hi <=> b.hi;
        return a.lo <=> b.lo;
    }
};

inline U256 mul_u128(u128 a, u128 b) {
    u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
    u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
    u128 p00 = static_cast<u128>(a0) * b0;
    u128 p01 = static_cast<u128>(a0) * b1;
    u128 p10 = static_cast<u128>(a1) * b0;
    u128 p11 = static_cast<u128>(a1) * b1;
    u128 mid = p01 + p10;
    u128 carry_mid = mid < p01 ? (static_cast<u128>(1) << 64) : 0;
    U256 r;
    r.lo = p00 + (mid << 64);
    u128 carry_lo = r.lo < p00 ? 1 : 0;
    r.hi = p11 + (mid >> 64) + carry_mid + carry_lo;
    return r;
}

}  // namespace sslab::detail
