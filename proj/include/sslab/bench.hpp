#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sslab/core.hpp"
#include "sslab/instance.hpp"
#include "sslab/solver.hpp"
#include "sslab/unbounded.hpp"

namespace sslab {

struct BenchRecord {
    std::string id;
    std::int64_t n = 0;
    Coord t = 0;
    int d = 1;
    std::size_t setsize = 0;
    std::string algo;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
    std::uint64_t sumset_elems = 0;
    std::uint64_t pr_nodes = 0;
    std::uint64_t hashes = 0;
};

inline const char* bench_csv_header() {
    return "id,n,t,d,setsize,algo,seed,wall_ms,sumset_elems,pr_nodes,hashes";
}

inline std::string to_csv_row(const BenchRecord& r) {
    std::ostringstream os;
    os << r.id << ',' << r.n << ',' << r.t << ',' << r.d << ',' << r.setsize << ',' << r.algo
       << ',' << r.seed << ',' << r.wall_ms << ',' << r.sumset_elems << ',' << r.pr_nodes
       << ',' << r.hashes;
    return os.str();
}

/// Run one algorithm on one instance, timing it and collecting counters.
inline BenchRecord bench_one(const Instance& inst, const std::string& id,
                             const std::string& algo, const SolverConfig& cfg) {
    BenchRecord rec;
    rec.id = id;
    rec.n = static_cast<std::int64_t>(inst.items.size());
    rec.t = inst.t;
    rec.d = inst.d;
    rec.algo = algo;
    rec.seed = cfg.seed;
    WorkCounters w;
    auto start = std::chrono::steady_clock::now();
    PointSet s;
    if (algo == "bellman") {
        s = bellman(preprocess_items(inst.items, inst.t, inst.d), inst.t, &w);
    } else if (algo == "fast") {
        s = solve(preprocess_items(inst.items, inst.t, inst.d), inst.t, cfg, &w);
    } else if (algo == "unbounded") {
        s = fast_unbounded(ItemMultiset::from_raw(inst.d, inst.items), inst.t, cfg, &w);
    } else {
        throw std::invalid_argument("bench: unknown algorithm " + algo);
    }
    auto stop = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rec.setsize = s.size();
    rec.sumset_elems = w.sumset_elems;
    rec.pr_nodes = w.pr_nodes;
    rec.hashes = w.hashes;
    return rec;
}

/// Bench every parseable instance file in a directory; rows sorted by id.
inline std::vector<BenchRecord> run_bench(const std::string& dir,
                                          const std::vector<std::string>& algos,
                                          const SolverConfig& cfg) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw std::runtime_error("bench: unreadable directory " + dir);
    std::vector<std::string> paths;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file()) paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    std::vector<BenchRecord> rows;
    for (const auto& p : paths) {
        Instance inst;
        try {
            inst = load_instance(p);
        } catch (const std::exception&) {
            continue;  // non-instance files are skipped
        }
        std::string id = fs::path(p).stem().string();
        if (inst.mode == InstanceMode::unbounded) {
            rows.push_back(bench_one(inst, id, "unbounded", cfg));
        } else {
            for (const auto& a : algos)
                if (a != "unbounded") rows.push_back(bench_one(inst, id, a, cfg));
        }
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const BenchRecord& x, const BenchRecord& y) { return x.id < y.id; });
    return rows;
}

}  // namespace sslab
