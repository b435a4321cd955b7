#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

// End-to-end checks of the command-line tool: exit codes, diagnostics,
// and byte-level determinism of exported files.

namespace {

struct cli_result {
    int exit_code;
    std::string output; // stdout + stderr
};

cli_result run_cli(const std::string& args) {
    const auto dir = std::filesystem::temp_directory_path() / "evobench_cli_tests";
    std::filesystem::create_directories(dir);
    const auto capture = dir / "capture.txt";
    const std::string cmd =
        std::string(EVOBENCH_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(capture);
    std::stringstream ss;
    ss << f.rdbuf();
    return {code, ss.str()};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::filesystem::path tmp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "evobench_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("cli: unknown algorithm exits 2 and names the flag") {
    const auto res = run_cli("run --algorithm nosuch --out " + tmp_file("x.csv").string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("algorithm") != std::string::npos);
}

TEST_CASE("cli: configuration errors exit 2 with a single-line diagnostic") {
    auto res = run_cli("run --algorithm shade --dim 17 --out " + tmp_file("x.csv").string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("dim") != std::string::npos);

    res = run_cli("run --algorithm shade --problems 0-3 --out " + tmp_file("x.csv").string());
    CHECK(res.exit_code == 2);

    res = run_cli("run --algorithm shade --set nonsense=1 --out " + tmp_file("x.csv").string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("nonsense") != std::string::npos);

    res = run_cli("run --algorithm cso --pop-size 25 --problems 1 --out " +
                  tmp_file("x.csv").string());
    CHECK(res.exit_code == 2);

    res = run_cli("run --algorithm shade --suite wrongsuite --out " +
                  tmp_file("x.csv").string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("suite") != std::string::npos);
}

TEST_CASE("cli: run produces the expected row count and identical reruns") {
    const auto out1 = tmp_file("det1.csv");
    const auto out2 = tmp_file("det2.csv");
    const std::string args = "run --algorithm lshade --dim 10 --problems 1-3 --instances 2 "
                             "--runs 3 --max-fes 3000 --pop-size 30 --seed 77 "
                             "--record-interval 300 --threads 2 --out ";
    REQUIRE(run_cli(args + out1.string()).exit_code == 0);
    REQUIRE(run_cli(args + out2.string()).exit_code == 0);

    const std::string a = slurp(out1);
    CHECK(a == slurp(out2)); // same command twice, byte-identical

    // 3 problems x 2 instances x 3 runs x 10 checkpoints + header
    long long lines = 0;
    for (char c : a)
        if (c == '\n')
            ++lines;
    CHECK(lines == 3 * 2 * 3 * 10 + 1);
}

TEST_CASE("cli: list-problems prints the stable 12-row registry") {
    const auto a = run_cli("list-problems");
    const auto b = run_cli("list-problems");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    long long rows = -1; // don't count the header
    std::stringstream ss(a.output);
    std::string line;
    bool hybrid_a = false, hybrid_b = false;
    while (std::getline(ss, line)) {
        ++rows;
        hybrid_a = hybrid_a || line.find("hybrid_a") != std::string::npos;
        hybrid_b = hybrid_b || line.find("hybrid_b") != std::string::npos;
    }
    CHECK(rows == 12);
    CHECK(hybrid_a);
    CHECK(hybrid_b);
}

TEST_CASE("cli: analyze computes final-checkpoint statistics") {
    const auto csv = tmp_file("analyze_input.csv");
    {
        std::ofstream f(csv, std::ios::binary);
        f << "suite,problem,instance,dim,run,fes,best_so_far\n";
        // two runs with finals 1 and 3: mean 2, std 1, min 1, median 2
        f << "seeded12,1,1,10,1,200,5\n";
        f << "seeded12,1,1,10,1,400,1\n";
        f << "seeded12,1,1,10,2,200,7\n";
        f << "seeded12,1,1,10,2,400,3\n";
        // single-run problem: std 0
        f << "seeded12,2,1,10,1,400,9\n";
    }
    const auto res = run_cli("analyze " + csv.string());
    CHECK(res.exit_code == 0);
    std::stringstream ss(res.output);
    std::string header, row1, row2;
    std::getline(ss, header);
    std::getline(ss, row1);
    std::getline(ss, row2);
    {
        std::stringstream r(row1);
        int problem, instance;
        std::size_t runs;
        double mean, stddev, minimum, median;
        r >> problem >> instance >> runs >> mean >> stddev >> minimum >> median;
        CHECK(problem == 1);
        CHECK(runs == 2);
        CHECK(mean == doctest::Approx(2.0));
        CHECK(stddev == doctest::Approx(1.0));
        CHECK(minimum == doctest::Approx(1.0));
        CHECK(median == doctest::Approx(2.0));
    }
    {
        std::stringstream r(row2);
        int problem, instance;
        std::size_t runs;
        double mean, stddev, minimum, median;
        r >> problem >> instance >> runs >> mean >> stddev >> minimum >> median;
        CHECK(problem == 2);
        CHECK(runs == 1);
        CHECK(stddev == doctest::Approx(0.0));
    }
}

TEST_CASE("cli: analyze rejects malformed input with a line number") {
    const auto empty = tmp_file("empty.csv");
    std::ofstream(empty).close();
    auto res = run_cli("analyze " + empty.string());
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("line 1") != std::string::npos);

    const auto bad = tmp_file("bad.csv");
    {
        std::ofstream f(bad);
        f << "suite,problem,instance,dim,run,fes,best_so_far\n";
        f << "seeded12,1,1,10,1,200,5\n";
        f << "not,enough,fields\n";
    }
    res = run_cli("analyze " + bad.string());
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("line 3") != std::string::npos);
}

TEST_CASE("cli: param-trace writes the side-car parameter CSV") {
    const auto out = tmp_file("trace.csv");
    const auto res = run_cli("run --algorithm jade --dim 10 --problems 3 --runs 1 "
                             "--max-fes 2000 --pop-size 20 --seed 5 --param-trace --out " +
                             out.string());
    REQUIRE(res.exit_code == 0);
    const auto params = tmp_file("trace_params.csv");
    REQUIRE(std::filesystem::exists(params));
    const std::string text = slurp(params);
    CHECK(text.rfind("problem,instance,run,generation,mu_f,mu_cr\n", 0) == 0);
    long long lines = 0;
    for (char c : text)
        if (c == '\n')
            ++lines;
    CHECK(lines == 1 + (2000 - 20) / 20); // header + one row per generation
}

TEST_CASE("cli: EVOBENCH_THREADS env var steers the default worker count") {
    const auto out_env = tmp_file("env2.csv");
    const auto out_one = tmp_file("env1.csv");
    const std::string common = " run --algorithm shade --dim 10 --problems 1 --runs 2 "
                               "--max-fes 2000 --pop-size 20 --seed 3 --out ";
    const std::string with_env = "EVOBENCH_THREADS=2 " + std::string(EVOBENCH_CLI_PATH) + common +
                                 out_env.string() + " > /dev/null 2>&1";
    REQUIRE(std::system(with_env.c_str()) == 0);
    REQUIRE(run_cli("run --algorithm shade --dim 10 --problems 1 --runs 2 --max-fes 2000 "
                    "--pop-size 20 --seed 3 --threads 1 --out " +
                    out_one.string())
                .exit_code == 0);
    CHECK(slurp(out_env) == slurp(out_one));
}
