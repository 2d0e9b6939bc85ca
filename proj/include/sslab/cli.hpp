#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "sslab/bench.hpp"
#include "sslab/core.hpp"
#include "sslab/instance.hpp"
#include "sslab/solver.hpp"
#include "sslab/submult.hpp"
#include "sslab/unbounded.hpp"

namespace sslab::cli {

inline void write_point_lines(std::ostream& out, const PointSet& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto p = s[i];
        for (int j = 0; j < s.dim(); ++j) out << (j ? " " : "") << p[j];
        out << '\n';
    }
}

inline int cmd_solve(const std::string& path, const std::string& algo, std::uint64_t seed,
                     unsigned k_const, const std::string& out_path) {
    Instance inst;
    try {
        inst = load_instance(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    const bool unbounded_mode = inst.mode == InstanceMode::unbounded;
    if (unbounded_mode != (algo == "unbounded")) {
        std::cerr << "usage: instance mode '" << (unbounded_mode ? "unbounded" : "bounded")
                  << "' requires --algo " << (unbounded_mode ? "unbounded" : "{bellman|fast}")
                  << '\n';
        return 1;
    }
    if (std::int64_t bad = inst.oversized_items())
        std::cerr << "warning: " << bad << " item(s) exceed t and will be dropped\n";

    SolverConfig cfg;
    cfg.seed = seed;
    cfg.k_const = k_const;
    cfg.engine.seed = derive_seed(seed, 0xc11ULL);
    WorkCounters w;
    PointSet s;
    try {
        if (algo == "bellman")
            s = bellman(preprocess_items(inst.items, inst.t, inst.d), inst.t, &w);
        else if (algo == "fast")
            s = solve(preprocess_items(inst.items, inst.t, inst.d), inst.t, cfg, &w);
        else
            s = fast_unbounded(ItemMultiset::from_raw(inst.d, inst.items), inst.t, cfg, &w);
    } catch (const RetryExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    if (out_path.empty()) {
        write_point_lines(std::cout, s);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return 1;
        }
        write_point_lines(out, s);
    }
    std::cerr << "|S| = " << s.size() << " sumset_elems=" << w.sumset_elems
              << " pr_nodes=" << w.pr_nodes << " hashes=" << w.hashes
              << " depth_max=" << w.depth_max << " retries=" << w.retries << '\n';
    return 0;
}

inline int cmd_gen(const std::string& kind, std::int64_t n, Coord t, int d, std::uint64_t seed,
                   const std::string& out_path) {
    try {
        if (kind == "footnote2") {
            auto [a, b] = gen_footnote2(n, t);
            save_instance(out_path + "_A.txt", a);
            save_instance(out_path + "_B.txt", b);
            std::cerr << "wrote " << out_path << "_A.txt and " << out_path << "_B.txt\n";
            return 0;
        }
        Instance inst;
        if (kind == "uniform")
            inst = gen_uniform(n, t, d, seed);
        else if (kind == "dense")
            inst = gen_dense(n, t, d, seed);
        else if (kind == "sparse-structured")
            inst = gen_sparse_structured(n, t, d, seed);
        else {
            std::cerr << "error: unknown kind " << kind << '\n';
            return 1;
        }
        save_instance(out_path, inst);
        std::cerr << "wrote " << out_path << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

/// Run the fast solver under several seeds and compare against the oracles.
inline int cmd_verify(const std::string& path, std::int64_t n_seeds, unsigned k_const,
                      std::ostream& report) {
    Instance inst;
    try {
        inst = load_instance(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    if (inst.mode != InstanceMode::bounded) {
        std::cerr << "usage: verify requires a bounded instance\n";
        return 1;
    }
    ItemMultiset x = preprocess_items(inst.items, inst.t, inst.d);
    PointSet reference = bellman(x, inst.t);
    bool have_naive = x.n() <= kNaiveOracleMaxItems;
    if (have_naive) {
        if (naive_oracle(x, inst.t) != reference) {
            report << "bellman vs naive oracle: MISMATCH\n";
            return 3;
        }
    } else {
        report << "n = " << x.n() << " exceeds the naive-oracle guard; comparing against "
                  "Bellman only\n";
    }
    std::int64_t mismatches = 0;
    for (std::int64_t i = 0; i < n_seeds; ++i) {
        SolverConfig cfg;
        cfg.k_const = k_const;
        cfg.seed = derive_seed(0x5eedULL, static_cast<std::uint64_t>(i));
        cfg.engine.seed = derive_seed(cfg.seed, 1);
        if (solve(x, inst.t, cfg) != reference) ++mismatches;
    }
    report << "seeds run: " << n_seeds << ", mismatches: " << mismatches << '\n';
    return mismatches == 0 ? 0 : 3;
}

/// Random sub-multiplicativity sweep; a violation is an engine bug.
inline int cmd_submult(std::int64_t families, std::uint64_t seed, std::ostream& report) {
    std::mt19937_64 rng(splitmix64(seed ^ 0x53bULL));
    std::int64_t violations = 0;
    for (std::int64_t f = 0; f < families; ++f) {
        std::size_t k = 3 + static_cast<std::size_t>(rng() % 3);
        std::vector<PointSet> sets;
        for (std::size_t i = 0; i < k; ++i) {
            std::uniform_int_distribution<Coord> val(0, 48);
            std::uniform_int_distribution<int> sz(1, 8);
            std::vector<Coord> v;
            int m = sz(rng);
            for (int q = 0; q < m; ++q) v.push_back(val(rng));
            sets.push_back(PointSet::of_values(v));
        }
        SubmultReport rep = check_submultiplicativity(sets);
        if (!rep.holds) {
            ++violations;
            report << "violation at family " << f << ": |sum|=" << rep.full_size
                   << " lhs=" << rep.lhs.str() << " rhs=" << rep.rhs.str() << '\n';
        }
    }
    report << "families checked: " << families << ", violations: " << violations << '\n';
    return violations == 0 ? 0 : 3;
}

inline int cmd_bench(const std::string& dir, const std::vector<std::string>& algos,
                     std::uint64_t seed, unsigned k_const, const std::string& out_path) {
    SolverConfig cfg;
    cfg.seed = seed;
    cfg.k_const = k_const;
    cfg.engine.seed = derive_seed(seed, 0xbe9cULL);
    std::vector<BenchRecord> rows;
    try {
        rows = run_bench(dir, algos, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    auto emit = [&](std::ostream& out) {
        out << bench_csv_header() << '\n';
        for (const auto& r : rows) out << to_csv_row(r) << '\n';
    };
    if (out_path.empty()) {
        emit(std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return 1;
        }
        emit(out);
    }
    return 0;
}

inline int run(std::vector<std::string> args) {
    CLI::App app{"subset-sum lab: output-sensitive subset sum algorithms"};
    app.require_subcommand(1);

    std::string path, out_path, algo = "fast", kind = "uniform";
    std::uint64_t seed = 0;
    unsigned k_const = 8;
    std::int64_t n = 16, n_seeds = 10, families = 500;
    Coord t = 64;
    int d = 1;
    std::vector<std::string> bench_algos{"bellman", "fast"};

    auto* solve_cmd = app.add_subcommand("solve", "compute the subset sums of an instance");
    solve_cmd->add_option("path", path, "instance file")->required();
    solve_cmd->add_option("--algo", algo, "bellman|fast|unbounded")
        ->check(CLI::IsMember({"bellman", "fast", "unbounded"}));
    solve_cmd->add_option("--seed", seed, "root seed");
    solve_cmd->add_option("--k-const", k_const, "multiplier in the K formula");
    solve_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
    gen_cmd->add_option("--kind", kind, "uniform|dense|sparse-structured|footnote2")
        ->check(CLI::IsMember({"uniform", "dense", "sparse-structured", "footnote2"}));
    gen_cmd->add_option("--n", n, "number of items")->required();
    gen_cmd->add_option("--t", t, "target")->required();
    gen_cmd->add_option("--d", d, "dimension");
    gen_cmd->add_option("--seed", seed, "generator seed");
    gen_cmd->add_option("--out", out_path, "output path")->required();

    auto* verify_cmd = app.add_subcommand("verify", "cross-check the fast solver vs oracles");
    verify_cmd->add_option("path", path, "instance file")->required();
    verify_cmd->add_option("--seeds", n_seeds, "number of seeds to try");
    verify_cmd->add_option("--k-const", k_const, "multiplier in the K formula");

    auto* submult_cmd =
        app.add_subcommand("submult", "sub-multiplicativity checker over random families");
    submult_cmd->add_option("--families", families, "number of random families");
    submult_cmd->add_option("--seed", seed, "generator seed");

    auto* bench_cmd = app.add_subcommand("bench", "benchmark instances in a directory");
    bench_cmd->add_option("dir", path, "instance directory")->required();
    bench_cmd->add_option("--algo", bench_algos, "algorithms to run")
        ->check(CLI::IsMember({"bellman", "fast", "unbounded"}));
    bench_cmd->add_option("--seed", seed, "root seed");
    bench_cmd->add_option("--k-const", k_const, "multiplier in the K formula");
    bench_cmd->add_option("--out", out_path, "CSV output file (default stdout)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (solve_cmd->parsed()) return cmd_solve(path, algo, seed, k_const, out_path);
    if (gen_cmd->parsed()) return cmd_gen(kind, n, t, d, seed, out_path);
    if (verify_cmd->parsed()) return cmd_verify(path, n_seeds, k_const, std::cout);
    if (submult_cmd->parsed()) return cmd_submult(families, seed, std::cout);
    if (bench_cmd->parsed()) return cmd_bench(path, bench_algos, seed, k_const, out_path);
    return 1;
}

}  // namespace sslab::cli
