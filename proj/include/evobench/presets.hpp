#pragma once

#include <concepts>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "evobench/common.hpp"
#include "evobench/de/builder.hpp"
#include "evobench/experiment/runner.hpp"
#include "evobench/hybrid/psode.hpp"
#include "evobench/hybrid/restart.hpp"
#include "evobench/pso/cso.hpp"
#include "evobench/pso/engine.hpp"

namespace evobench::presets {

/// A named algorithm composition with numeric overrides (the CLI's
/// --set key=value pairs).
struct algorithm_options {
    std::string name;
    int pop_size = 100;
    std::map<std::string, double> overrides;
};

inline const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names = {
        "de",  "jade", "shade", "lshade", "pso", "spso2011", "cso", "psode", "restart-lshade"};
    return names;
}

namespace detail {

class override_reader {
public:
    explicit override_reader(const std::map<std::string, double>& values) : values_(values) {}

    double get(const std::string& key, double fallback) {
        consumed_.insert(key);
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    void finish(const std::string& algorithm) const {
        for (const auto& [key, value] : values_)
            evobench::detail::require(consumed_.count(key) != 0,
                                      "algorithm " + algorithm + ": unknown override '" + key +
                                          "'");
    }

private:
    const std::map<std::string, double>& values_;
    std::set<std::string> consumed_;
};

template <std::floating_point T>
de::de_engine<T> build_de_fixed(double f, double cr) {
    return de::de_builder<T>()
        .mutation(std::make_unique<de::rand1_mutation<T>>())
        .crossover(std::make_unique<de::binomial_crossover<T>>())
        .repair(std::make_unique<de::clip_repair<T>>())
        .parameter(std::make_unique<de::fixed_parameter<T>>(T(f), T(cr)))
        .population(de::population_policy::fixed())
        .archive_rate(T(0))
        .build();
}

template <std::floating_point T>
de::de_engine<T> build_jade(double p, double c, double archive_rate) {
    return de::de_builder<T>()
        .mutation(std::make_unique<de::ttpb1_mutation<T>>(T(p), archive_rate > 0))
        .crossover(std::make_unique<de::binomial_crossover<T>>())
        .repair(std::make_unique<de::midpoint_target_repair<T>>())
        .parameter(std::make_unique<de::jade_parameter<T>>(T(c)))
        .population(de::population_policy::fixed())
        .archive_rate(T(archive_rate))
        .build();
}

template <std::floating_point T>
de::de_engine<T> build_shade(double p, int memory_size, double archive_rate,
                             de::population_policy policy) {
    return de::de_builder<T>()
        .mutation(std::make_unique<de::ttpb1_mutation<T>>(T(p), archive_rate > 0))
        .crossover(std::make_unique<de::binomial_crossover<T>>())
        .repair(std::make_unique<de::midpoint_target_repair<T>>())
        .parameter(std::make_unique<de::shade_parameter<T>>(memory_size))
        .population(policy)
        .archive_rate(T(archive_rate))
        .build();
}

template <std::floating_point T>
pso::pso_engine<T> build_pso(bool spherical_ring, double inertia, double cognitive, double social,
                             double attraction) {
    pso::swarm_params<T> params;
    params.inertia = T(inertia);
    params.cognitive = T(cognitive);
    params.social = T(social);
    params.attraction = T(attraction);
    auto builder = pso::pso_builder<T>();
    if (spherical_ring)
        builder.topology(std::make_unique<pso::lbest_topology<T>>())
            .update(std::make_unique<pso::spherical_update<T>>());
    else
        builder.topology(std::make_unique<pso::gbest_topology<T>>())
            .update(std::make_unique<pso::standard_update<T>>());
    return builder.params(params).build();
}

} // namespace detail

/// Builds the callable evo_bench expects from a named preset. The
/// returned closure is stateless across invocations (everything per-run
/// is constructed inside), so it is safe to run concurrently.
template <std::floating_point T>
std::function<void(experiment::run_handle<T>&)> make_algorithm(const algorithm_options& opt) {
    using handle_t = experiment::run_handle<T>;
    const pso::swarm_params<T> defaults;
    detail::override_reader reader(opt.overrides);
    const int ps = opt.pop_size;
    evobench::detail::require(ps >= 4, "algorithm: pop size must be at least 4");

    const auto gen_hook = [](handle_t& h) {
        return [&h](int generation, std::span<const named_value<T>> params) {
            h.notify_generation(generation, params);
        };
    };

    if (opt.name == "de") {
        const double f = reader.get("f", 0.5), cr = reader.get("cr", 0.9);
        reader.finish(opt.name);
        return [=](handle_t& h) {
            auto engine = detail::build_de_fixed<T>(f, cr);
            engine.optimize(h, h.lb(), h.ub(), ps, h.dim(), h.max_fes(), h.rng(), gen_hook(h));
        };
    }
    if (opt.name == "jade") {
        const double p = reader.get("p", 0.05), c = reader.get("c", 0.1);
        const double archive = reader.get("archive_rate", 0.0);
        reader.finish(opt.name);
        return [=](handle_t& h) {
            auto engine = detail::build_jade<T>(p, c, archive);
            engine.optimize(h, h.lb(), h.ub(), ps, h.dim(), h.max_fes(), h.rng(), gen_hook(h));
        };
    }
    if (opt.name == "shade" || opt.name == "lshade") {
        const bool reduce = opt.name == "lshade";
        const double p = reader.get("p", 0.11);
        const int memory = int(reader.get("h", double(ps)));
        const double archive = reader.get("archive_rate", 1.0);
        const int n_min = int(reader.get("n_min", 4));
        reader.finish(opt.name);
        const auto policy = reduce ? de::population_policy::linear_reduction(ps, n_min)
                                   : de::population_policy::fixed();
        return [=](handle_t& h) {
            auto engine = detail::build_shade<T>(p, memory, archive, policy);
            engine.optimize(h, h.lb(), h.ub(), ps, h.dim(), h.max_fes(), h.rng(), gen_hook(h));
        };
    }
    if (opt.name == "pso" || opt.name == "spso2011") {
        const bool spherical = opt.name == "spso2011";
        const double w = reader.get("w", double(defaults.inertia));
        const double c1 = reader.get("c1", double(defaults.cognitive));
        const double c2 = reader.get("c2", double(defaults.social));
        const double c = reader.get("c", double(defaults.attraction));
        reader.finish(opt.name);
        return [=](handle_t& h) {
            auto engine = detail::build_pso<T>(spherical, w, c1, c2, c);
            engine.optimize(h, h.lb(), h.ub(), ps, h.dim(), h.max_fes(), h.rng());
        };
    }
    if (opt.name == "cso") {
        const double phi = reader.get("phi", 0.1);
        reader.finish(opt.name);
        evobench::detail::require(ps % 2 == 0, "algorithm cso: pop size must be even");
        return [=](handle_t& h) {
            pso::cso_optimizer<T> engine{T(phi)};
            engine.optimize(h, h.lb(), h.ub(), ps, h.dim(), h.max_fes(), h.rng());
        };
    }
    if (opt.name == "psode") {
        const double p = reader.get("p", 0.11);
        const int memory = int(reader.get("h", double(ps)));
        const double w = reader.get("w", double(defaults.inertia));
        const double c = reader.get("c", double(defaults.attraction));
        reader.finish(opt.name);
        return [=](handle_t& h) {
            auto de_engine = detail::build_shade<T>(p, memory, 0.0, de::population_policy::fixed());
            auto pso_engine = detail::build_pso<T>(true, w, double(defaults.cognitive),
                                                   double(defaults.social), c);
            hybrid::psode_run(pso_engine, de_engine, h, h.lb(), h.ub(), ps, h.dim(), h.max_fes(),
                              h.rng(), gen_hook(h));
        };
    }
    if (opt.name == "restart-lshade") {
        const double p = reader.get("p", 0.11);
        const int memory = int(reader.get("h", double(ps)));
        const double archive = reader.get("archive_rate", 1.0);
        const int n_min = int(reader.get("n_min", 4));
        const double epsilon = reader.get("epsilon", 1e-8);
        const double stagnation = reader.get("stagnation", 0.0); // 0: 100 * dim
        reader.finish(opt.name);
        return [=](handle_t& h) {
            hybrid::restart_criterion criterion;
            criterion.epsilon = epsilon;
            criterion.stagnation_evals =
                stagnation > 0 ? (long long)(stagnation) : 100LL * h.dim();
            const auto factory = [&] {
                return detail::build_shade<T>(p, memory, archive,
                                              de::population_policy::linear_reduction(ps, n_min));
            };
            hybrid::restart_run<T>(factory, criterion, h, h.lb(), h.ub(), ps, h.dim(), h.max_fes(),
                                   h.rng(), gen_hook(h));
        };
    }
    throw config_error("algorithm: unknown name '" + opt.name + "'");
}

} // namespace evobench::presets
