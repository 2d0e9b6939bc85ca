#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sslab/cli.hpp"

using namespace sslab;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
    fs::path dir = fs::temp_directory_path() / "sslab_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("solve command writes the sum set in order") {
    fs::path dir = tmp_dir();
    fs::path inst = dir / "tiny.txt", out = dir / "tiny.out";
    std::ofstream(inst) << "1 3 2 bounded\n1\n2\n";
    int rc = cli::run({"solve", inst.string(), "--algo", "bellman", "--out", out.string()});
    REQUIRE(rc == 0);
    REQUIRE(slurp(out) == "0\n1\n2\n3\n");
}

TEST_CASE("solve command on an empty instance prints just zero") {
    fs::path dir = tmp_dir();
    fs::path inst = dir / "empty.txt", out = dir / "empty.out";
    std::ofstream(inst) << "1 5 0 bounded\n";
    REQUIRE(cli::run({"solve", inst.string(), "--algo", "fast", "--out", out.string()}) == 0);
    REQUIRE(slurp(out) == "0\n");
}

TEST_CASE("mode/algo mismatch and parse failures exit 1") {
    fs::path dir = tmp_dir();
    fs::path inst = dir / "unb.txt";
    std::ofstream(inst) << "1 9 1 unbounded\n3\n";
    REQUIRE(cli::run({"solve", inst.string(), "--algo", "fast"}) == 1);
    REQUIRE(cli::run({"solve", inst.string(), "--algo", "bellman"}) == 1);
    REQUIRE(cli::run({"solve", (dir / "missing.txt").string()}) == 1);
    fs::path bad = dir / "bad.txt";
    std::ofstream(bad) << "1 9 junk bounded\n";
    REQUIRE(cli::run({"solve", bad.string()}) == 1);
    REQUIRE(cli::run({"solve", inst.string(), "--algo", "unbounded"}) == 0);
}

TEST_CASE("gen command produces loadable deterministic files") {
    fs::path dir = tmp_dir();
    fs::path out = dir / "gen_dense.txt";
    REQUIRE(cli::run({"gen", "--kind", "dense", "--n", "16", "--t", "64", "--d", "1", "--seed",
                      "3", "--out", out.string()}) == 0);
    Instance inst = load_instance(out.string());
    REQUIRE(inst.items.size() == 16);
    for (const auto& it : inst.items) REQUIRE(it[0] <= 4);

    fs::path pair = dir / "fn2";
    REQUIRE(cli::run({"gen", "--kind", "footnote2", "--n", "8", "--t", "1000", "--out",
                      pair.string()}) == 0);
    REQUIRE(load_instance(pair.string() + "_A.txt").items.size() == 8);
    REQUIRE(load_instance(pair.string() + "_B.txt").items.size() == 8);

    REQUIRE(cli::run({"gen", "--kind", "uniform", "--n", "0", "--t", "64", "--out",
                      (dir / "zz.txt").string()}) == 1);
}

TEST_CASE("verify command") {
    fs::path dir = tmp_dir();
    fs::path inst = dir / "ver.txt";
    std::ofstream(inst) << "1 24 5 bounded\n3\n5\n7\n11\n13\n";
    SECTION("zero seeds is an empty run") {
        std::ostringstream rep;
        REQUIRE(cli::cmd_verify(inst.string(), 0, 8, rep) == 0);
    }
    SECTION("fast solver agrees across seeds") {
        std::ostringstream rep;
        REQUIRE(cli::cmd_verify(inst.string(), 12, 8, rep) == 0);
        REQUIRE(rep.str().find("mismatches: 0") != std::string::npos);
    }
    SECTION("large n skips the naive oracle but still verifies") {
        fs::path big = dir / "big.txt";
        std::ofstream out(big);
        out << "1 40 30 bounded\n";
        for (int i = 0; i < 30; ++i) out << (1 + i % 7) << '\n';
        out.close();
        std::ostringstream rep;
        REQUIRE(cli::cmd_verify(big.string(), 3, 8, rep) == 0);
        REQUIRE(rep.str().find("Bellman only") != std::string::npos);
    }
}

TEST_CASE("submult command finds no violations") {
    std::ostringstream rep;
    REQUIRE(cli::cmd_submult(40, 11, rep) == 0);
    REQUIRE(rep.str().find("violations: 0") != std::string::npos);
}

TEST_CASE("bench command emits the pinned CSV header") {
    fs::path dir = tmp_dir() / "benchdir";
    fs::create_directories(dir);
    save_instance((dir / "a.txt").string(), gen_uniform(5, 30, 1, 9));
    fs::path csv = tmp_dir() / "bench.csv";
    REQUIRE(cli::run({"bench", dir.string(), "--out", csv.string()}) == 0);
    std::string text = slurp(csv);
    REQUIRE(text.rfind("id,n,t,d,setsize,algo,seed,wall_ms,sumset_elems,pr_nodes,hashes\n",
                       0) == 0);
    REQUIRE(std::count(text.begin(), text.end(), '\n') == 3);  // header + 2 algos
    REQUIRE(cli::run({"bench", (dir / "missing").string()}) == 1);
}
