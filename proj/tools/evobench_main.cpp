// Command-line front end: run benchmark experiments, list the problem
// registry, and summarize result CSVs.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "evobench/evobench.hpp"

namespace {

using namespace evobench;

std::vector<int> parse_problem_list(const std::string& text) {
    std::vector<int> ids;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty())
            throw config_error("--problems: empty entry in '" + text + "'");
        const auto dash = token.find('-');
        try {
            if (dash == std::string::npos) {
                ids.push_back(std::stoi(token));
            } else {
                const int lo = std::stoi(token.substr(0, dash));
                const int hi = std::stoi(token.substr(dash + 1));
                if (hi < lo)
                    throw config_error("--problems: bad range '" + token + "'");
                for (int id = lo; id <= hi; ++id)
                    ids.push_back(id);
            }
        } catch (const std::invalid_argument&) {
            throw config_error("--problems: cannot parse '" + token + "'");
        } catch (const std::out_of_range&) {
            throw config_error("--problems: value out of range in '" + token + "'");
        }
    }
    if (ids.empty())
        throw config_error("--problems: no ids given");
    return ids;
}

std::map<std::string, double> parse_overrides(const std::vector<std::string>& pairs) {
    std::map<std::string, double> overrides;
    for (const auto& pair : pairs) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0)
            throw config_error("--set: expected key=value, got '" + pair + "'");
        const std::string key = pair.substr(0, eq);
        try {
            overrides[key] = std::stod(pair.substr(eq + 1));
        } catch (const std::exception&) {
            throw config_error("--set: cannot parse value in '" + pair + "'");
        }
    }
    return overrides;
}

std::string params_path_for(const std::string& out_path) {
    const auto dot = out_path.find_last_of('.');
    if (dot == std::string::npos || out_path.find('/', dot) != std::string::npos)
        return out_path + "_params.csv";
    return out_path.substr(0, dot) + "_params" + out_path.substr(dot);
}

struct run_options {
    std::string algorithm;
    std::vector<std::string> set_pairs;
    std::string suite_name = "seeded12";
    std::string problems = "1-12";
    int dim = 10;
    int instances = 1;
    int runs = 1;
    long long max_fes = 10000;
    int pop_size = 100;
    std::uint64_t seed = 0;
    int threads = 0;
    long long record_interval = 200;
    std::string out_path;
    bool param_trace = false;
};

int run_command(const run_options& opt) {
    bool known_algorithm = false;
    for (const auto& name : presets::algorithm_names())
        known_algorithm = known_algorithm || name == opt.algorithm;
    if (!known_algorithm)
        throw config_error("--algorithm: unknown algorithm '" + opt.algorithm + "'");
    if (opt.suite_name != "seeded12")
        throw config_error("--suite: unknown suite '" + opt.suite_name + "' (available: seeded12)");
    if (opt.runs < 1)
        throw config_error("--runs: must be at least 1");
    if (opt.max_fes < 1)
        throw config_error("--max-fes: must be positive");
    if (opt.record_interval < 1)
        throw config_error("--record-interval: must be positive");
    if (opt.pop_size < 4)
        throw config_error("--pop-size: must be at least 4");
    if (opt.out_path.empty())
        throw config_error("--out: output path required");

    const auto suite = problems::suite_builder<double>()
                           .name(opt.suite_name)
                           .dim(opt.dim)
                           .problem_ids(parse_problem_list(opt.problems))
                           .instance_count(opt.instances)
                           .seed(opt.seed)
                           .build();

    presets::algorithm_options alg_opt;
    alg_opt.name = opt.algorithm;
    alg_opt.pop_size = opt.pop_size;
    alg_opt.overrides = parse_overrides(opt.set_pairs);
    const auto algorithm = presets::make_algorithm<double>(alg_opt);

    experiment::best_so_far_record<double> recorder(suite, opt.runs, opt.max_fes,
                                                    opt.record_interval);
    experiment::parameter_record<double> params(suite, opt.runs);
    experiment::multi_observer<double> observers;
    observers.add(recorder);
    if (opt.param_trace)
        observers.add(params);

    experiment::bench_options bench;
    bench.independent_runs = opt.runs;
    bench.max_fes = opt.max_fes;
    bench.threads = opt.threads;
    bench.parallel = opt.threads != 1;
    bench.master_seed = opt.seed;
    experiment::evo_bench<double>(algorithm, suite, observers, bench);

    recorder.export_csv(opt.out_path);
    std::cout << "wrote " << opt.out_path << " ("
              << (long long)suite.size() * opt.runs * recorder.checkpoint_count()
              << " data rows)\n";
    if (opt.param_trace) {
        const std::string ppath = params_path_for(opt.out_path);
        params.export_csv(ppath);
        std::cout << "wrote " << ppath << "\n";
    }
    return 0;
}

int list_problems_command() {
    std::printf("%4s  %-22s  %-12s  %s\n", "id", "name", "kind", "bounds");
    for (const auto& info : problems::problem_registry())
        std::printf("%4d  %-22s  %-12s  [%g, %g]\n", info.id, std::string(info.name).c_str(),
                    std::string(info.kind).c_str(), problems::default_lower_bound,
                    problems::default_upper_bound);
    return 0;
}

struct csv_parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int analyze_command(const std::string& path) {
    std::ifstream file(path);
    if (!file)
        throw std::runtime_error("analyze: cannot open " + path);

    std::string line;
    long long line_no = 0;
    if (!std::getline(file, line))
        throw csv_parse_error("analyze: " + path + ": line 1: empty file");
    ++line_no;
    if (line != "suite,problem,instance,dim,run,fes,best_so_far")
        throw csv_parse_error("analyze: " + path + ": line 1: unexpected header");

    // (problem, instance) -> run -> (fes, value at that fes)
    std::map<std::pair<int, int>, std::map<int, std::pair<long long, double>>> finals;
    while (std::getline(file, line)) {
        ++line_no;
        if (line.empty())
            throw csv_parse_error("analyze: " + path + ": line " + std::to_string(line_no) +
                                  ": empty row");
        std::stringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ','))
            fields.push_back(field);
        if (fields.size() != 7)
            throw csv_parse_error("analyze: " + path + ": line " + std::to_string(line_no) +
                                  ": expected 7 fields, got " + std::to_string(fields.size()));
        try {
            const int problem = std::stoi(fields[1]);
            const int instance = std::stoi(fields[2]);
            const int run = std::stoi(fields[4]);
            const long long fes = std::stoll(fields[5]);
            const double value = std::stod(fields[6]);
            auto& slot = finals[{problem, instance}][run];
            if (fes >= slot.first)
                slot = {fes, value};
        } catch (const std::exception&) {
            throw csv_parse_error("analyze: " + path + ": line " + std::to_string(line_no) +
                                  ": cannot parse row");
        }
    }
    if (finals.empty())
        throw csv_parse_error("analyze: " + path + ": line " + std::to_string(line_no) +
                              ": no data rows");

    std::printf("%8s %9s %6s %15s %15s %15s %15s\n", "problem", "instance", "runs", "mean", "std",
                "min", "median");
    for (const auto& [key, runs] : finals) {
        std::vector<double> values;
        values.reserve(runs.size());
        for (const auto& [run, fv] : runs)
            values.push_back(fv.second);
        std::sort(values.begin(), values.end());
        const double n = double(values.size());
        double mean = 0.0;
        for (double v : values)
            mean += v;
        mean /= n;
        double var = 0.0;
        for (double v : values)
            var += (v - mean) * (v - mean);
        var /= n;
        const double median = values.size() % 2 == 1
                                  ? values[values.size() / 2]
                                  : 0.5 * (values[values.size() / 2 - 1] +
                                           values[values.size() / 2]);
        std::printf("%8d %9d %6zu %15.6g %15.6g %15.6g %15.6g\n", key.first, key.second,
                    values.size(), mean, std::sqrt(var), values.front(), median);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"evobench: modular DE/PSO benchmarking on a seeded problem suite"};
    app.require_subcommand(1);

    run_options ropt;
    auto* run = app.add_subcommand("run", "run an algorithm over the suite and export CSV");
    run->add_option("--algorithm", ropt.algorithm,
                    "algorithm preset: de, jade, shade, lshade, pso, spso2011, cso, psode, "
                    "restart-lshade")
        ->required();
    run->add_option("--set", ropt.set_pairs, "strategy constant override, key=value (repeatable)");
    run->add_option("--suite", ropt.suite_name, "suite name (default seeded12)");
    run->add_option("--problems", ropt.problems, "problem ids, e.g. 1-12 or 1,3,9");
    run->add_option("--dim", ropt.dim, "problem dimension");
    run->add_option("--instances", ropt.instances, "instances per problem");
    run->add_option("--runs", ropt.runs, "independent runs per instance");
    run->add_option("--max-fes", ropt.max_fes, "evaluation budget per run");
    run->add_option("--pop-size", ropt.pop_size, "population size");
    run->add_option("--seed", ropt.seed, "master seed");
    run->add_option("--threads", ropt.threads,
                    "worker threads; 1 = sequential, 0 = EVOBENCH_THREADS env or hardware");
    run->add_option("--record-interval", ropt.record_interval,
                    "evaluations between best-so-far checkpoints");
    run->add_option("--out", ropt.out_path, "output CSV path")->required();
    run->add_flag("--param-trace", ropt.param_trace,
                  "also export the per-generation mu_f/mu_cr trace");

    auto* list = app.add_subcommand("list-problems", "print the problem registry");

    std::string analyze_path;
    auto* analyze = app.add_subcommand("analyze", "summarize a result CSV");
    analyze->add_option("csv", analyze_path, "CSV file produced by run")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed())
            return run_command(ropt);
        if (list->parsed())
            return list_problems_command();
        if (analyze->parsed())
            return analyze_command(analyze_path);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const csv_parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
