#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sslab {

using Coord = std::int64_t;

/// Raised when a point set cannot be packed into a single machine word,
/// e.g. (2t+1)^d exceeds the configured integer width. Callers should fall
/// back to direct d-dimensional merging.
struct EncodingOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised by the randomized solver after exhausting its reseed budget.
struct RetryExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Work accounting shared by all algorithms. Counters are the portable
/// proxy for running time; wall time is measured separately and never
/// asserted on.
struct WorkCounters {
    std::uint64_t sumset_elems = 0;  // elements emitted by sumset-engine calls
    std::uint64_t pr_nodes = 0;      // prefix-restricted recursion nodes
    std::uint64_t hashes = 0;        // hash functions evaluated (color coding)
    std::uint32_t depth_max = 0;     // deepest solver recursion level seen
    std::uint32_t retries = 0;       // solver reseed-and-retry events
    // Scratch: work of the most recent completed prefix-restricted attempt
    // (the top-level one finishes last). Not folded by merge().
    std::uint64_t pr_last_work = 0;

    void merge(const WorkCounters& o) {
        sumset_elems += o.sumset_elems;
        pr_nodes += o.pr_nodes;
        hashes += o.hashes;
        if (o.depth_max > depth_max) depth_max = o.depth_max;
        retries += o.retries;
    }
    std::uint64_t total() const { return sumset_elems + pr_nodes + hashes; }
};

inline void count_sumset(WorkCounters* w, std::uint64_t n) {
    if (w) w->sumset_elems += n;
}
inline void count_pr_node(WorkCounters* w) {
    if (w) w->pr_nodes += 1;
}
inline void count_hashes(WorkCounters* w, std::uint64_t n) {
    if (w) w->hashes += n;
}

/// Exact rational target. Only ever one recursion level away from an
/// integer: callers floor immediately, so numerators stay small.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den <= 0) throw std::invalid_argument("Rational: denominator must be positive");
    }
    Coord floor() const {
        if (num >= 0) return num / den;
        return -((-num + den - 1) / den);
    }
};

/// Debug-mode invariant checks (chain disjointness, fold sub-multiplicativity)
/// are gated on SSLAB_DEBUG_ASSERTS=1.
inline bool debug_asserts_enabled() {
    static const bool on = [] {
        const char* v = std::getenv("SSLAB_DEBUG_ASSERTS");
        return v != nullptr && v[0] == '1';
    }();
    return on;
}

/// splitmix64; used to derive independent child seeds from a parent seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t salt) {
    return splitmix64(parent ^ splitmix64(salt + 0x51ab51ab51ab51abULL));
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    const std::uint64_t cap = UINT64_MAX;
    return p > cap ? cap : static_cast<std::uint64_t>(p);
}

inline std::uint64_t saturating_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r = saturating_mul(r, base);
    return r;
}

/// ceil(log2(x)) for x >= 1.
inline unsigned ceil_log2(std::uint64_t x) {
    unsigned r = 0;
    std::uint64_t v = 1;
    while (v < x) {
        v = saturating_mul(v, 2);
        ++r;
    }
    return r;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Smallest prime >= n (n >= 0; returns 2 for n <= 2).
inline std::uint64_t next_prime_at_least(std::uint64_t n) {
    if (n <= 2) return 2;
    if (n % 2 == 0) ++n;
    while (!is_prime_u64(n)) n += 2;
    return n;
}

}  // namespace sslab
