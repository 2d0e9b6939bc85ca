#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sslab/types.hpp"
#include "sslab/util.hpp"

namespace sslab {

enum class InstanceMode { bounded, unbounded };

/// Plain-text instance: header line "d t n mode", then n lines of d
/// space-separated nonnegative integers (duplicates allowed). ASCII, LF.
struct Instance {
    int d = 1;
    Coord t = 0;
    std::int64_t n = 0;
    InstanceMode mode = InstanceMode::bounded;
    std::vector<std::vector<Coord>> items;

    /// Items with a coordinate above t; kept in the file model but dropped
    /// by preprocessing. Parsers surface this as a warning.
    std::int64_t oversized_items() const {
        std::int64_t c = 0;
        for (const auto& it : items) {
            for (Coord v : it)
                if (v > t) {
                    ++c;
                    break;
                }
        }
        return c;
    }
};

inline Instance parse_instance(std::istream& in) {
    Instance inst;
    std::string mode_word;
    if (!(in >> inst.d >> inst.t >> inst.n >> mode_word))
        throw std::runtime_error("instance: malformed header (want \"d t n mode\")");
    if (mode_word == "bounded")
        inst.mode = InstanceMode::bounded;
    else if (mode_word == "unbounded")
        inst.mode = InstanceMode::unbounded;
    else
        throw std::runtime_error("instance: unknown mode \"" + mode_word + "\"");
    if (inst.d < 1) throw std::runtime_error("instance: d must be >= 1");
    if (inst.t < 0) throw std::runtime_error("instance: t must be nonnegative");
    if (inst.n < 0) throw std::runtime_error("instance: n must be nonnegative");
    inst.items.reserve(static_cast<std::size_t>(inst.n));
    for (std::int64_t i = 0; i < inst.n; ++i) {
        std::vector<Coord> item(inst.d);
        for (int j = 0; j < inst.d; ++j) {
            if (!(in >> item[j]))
                throw std::runtime_error("instance: expected " + std::to_string(inst.n) +
                                         " item lines, stopped at " + std::to_string(i));
            if (item[j] < 0) throw std::runtime_error("instance: negative coordinate");
        }
        inst.items.push_back(std::move(item));
    }
    return inst;
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("instance: cannot open " + path);
    return parse_instance(in);
}

inline void write_instance(std::ostream& out, const Instance& inst) {
    out << inst.d << ' ' << inst.t << ' ' << inst.items.size() << ' '
        << (inst.mode == InstanceMode::bounded ? "bounded" : "unbounded") << '\n';
    for (const auto& item : inst.items) {
        for (int j = 0; j < inst.d; ++j) out << (j ? " " : "") << item[j];
        out << '\n';
    }
}

inline std::string serialize_instance(const Instance& inst) {
    std::ostringstream os;
    write_instance(os, inst);
    return os.str();
}

inline void save_instance(const std::string& path, const Instance& inst) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw std::runtime_error("instance: cannot write " + path);
    write_instance(out, inst);
}

// ---- generators ----

/// Items i.i.d. uniform on [1..t]^d.
inline Instance gen_uniform(std::int64_t n, Coord t, int d, std::uint64_t seed) {
    if (n < 1 || t < 1 || d < 1) throw std::invalid_argument("gen_uniform: parameters positive");
    Instance inst;
    inst.d = d;
    inst.t = t;
    inst.n = n;
    std::mt19937_64 rng(splitmix64(seed ^ 0x0121f02eULL));
    std::uniform_int_distribution<Coord> coord(1, t);
    for (std::int64_t i = 0; i < n; ++i) {
        std::vector<Coord> item(d);
        for (int j = 0; j < d; ++j) item[j] = coord(rng);
        inst.items.push_back(std::move(item));
    }
    return inst;
}

/// Items from [1..ceil(t/n)]^d, so the sums nearly fill the box.
inline Instance gen_dense(std::int64_t n, Coord t, int d, std::uint64_t seed) {
    if (n < 1 || t < 1 || d < 1) throw std::invalid_argument("gen_dense: parameters positive");
    Instance inst;
    inst.d = d;
    inst.t = t;
    inst.n = n;
    std::mt19937_64 rng(splitmix64(seed ^ 0xde2153ULL));
    Coord hi = (t + n - 1) / n;
    std::uniform_int_distribution<Coord> coord(1, hi);
    for (std::int64_t i = 0; i < n; ++i) {
        std::vector<Coord> item(d);
        for (int j = 0; j < d; ++j) item[j] = coord(rng);
        inst.items.push_back(std::move(item));
    }
    return inst;
}

/// Near-geometric progression on the diagonal: few distinct subset sums
/// relative to t.
inline Instance gen_sparse_structured(std::int64_t n, Coord t, int d, std::uint64_t seed) {
    if (n < 1 || t < 1 || d < 1)
        throw std::invalid_argument("gen_sparse_structured: parameters positive");
    Instance inst;
    inst.d = d;
    inst.t = t;
    inst.n = n;
    std::mt19937_64 rng(splitmix64(seed ^ 0x59a25eULL));
    unsigned levels = std::max(1u, ceil_log2(static_cast<std::uint64_t>(t) + 1));
    for (std::int64_t i = 0; i < n; ++i) {
        unsigned lvl = static_cast<unsigned>(i) % levels + 1;
        Coord v = std::max<Coord>(1, t >> lvl);
        // tiny jitter keeps values distinct-ish without spreading the sums
        v = std::max<Coord>(1, v - static_cast<Coord>(rng() % 2));
        inst.items.push_back(std::vector<Coord>(d, v));
    }
    return inst;
}

/// The adversarial pair A = t/2 + {1..n}, B = t/2 + {n, 2n, .., n^2}:
/// |A+B| = n^2 yet every pairwise sum exceeds t.
inline std::pair<Instance, Instance> gen_footnote2(std::int64_t n, Coord t) {
    if (n < 1 || t < 1) throw std::invalid_argument("gen_footnote2: parameters positive");
    if (t / 2 + n * n > t)
        throw std::invalid_argument("gen_footnote2: need t/2 + n^2 <= t");
    Instance a, b;
    a.d = b.d = 1;
    a.t = b.t = t;
    a.n = b.n = n;
    for (std::int64_t i = 1; i <= n; ++i) a.items.push_back({t / 2 + i});
    for (std::int64_t j = 1; j <= n; ++j) b.items.push_back({t / 2 + j * n});
    return {a, b};
}

}  // namespace sslab
