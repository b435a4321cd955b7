#pragma once

#include <concepts>
#include <functional>
#include <limits>
#include <span>

#include "evobench/common.hpp"
#include "evobench/core/population.hpp"
#include "evobench/core/rng.hpp"

namespace evobench::hybrid {

/// Restart trigger: the run stagnated once `stagnation_evals` evaluations
/// pass without improving the best-so-far by more than `epsilon`.
struct restart_criterion {
    long long stagnation_evals = 1;
    double epsilon = 1e-8;

    static restart_criterion for_dim(int dim) { return {100LL * dim, 1e-8}; }
};

template <std::floating_point T>
struct restart_result {
    individual<T> best;
    int engine_runs = 0;
    long long evaluations = 0;
};

/// Runs freshly built engines until the total budget is spent, restarting
/// whenever the criterion fires. `make_engine()` must return an engine
/// exposing optimize(objective, lb, ub, pop_size, dim, max_fes, rng,
/// on_generation, stop); each call builds a new engine, so adaptation
/// state and archives start clean after every restart. The best
/// individual across all restarts is returned, and the observer sees one
/// continuous run.
template <std::floating_point T, typename EngineFactory, typename F, typename GenHook>
restart_result<T> restart_run(EngineFactory&& make_engine, restart_criterion criterion,
                              F&& objective, T lb, T ub, int pop_size, int dim,
                              long long total_budget, rng_stream& rng, GenHook&& on_generation) {
    detail::require(criterion.stagnation_evals >= 1,
                    "restart: stagnation_evals must be at least 1");
    detail::require(criterion.epsilon >= 0.0, "restart: epsilon must be non-negative");
    detail::require(total_budget >= pop_size, "restart: budget below one initialization");

    restart_result<T> result;
    result.best.fitness = std::numeric_limits<T>::infinity();

    double best_seen = std::numeric_limits<double>::infinity();
    long long since_improvement = 0;
    int generation_offset = 0;
    int last_generation = 0;

    const auto monitored = [&](std::span<const T> x) {
        const T value = objective(x);
        ++result.evaluations;
        if (double(value) < best_seen - criterion.epsilon) {
            best_seen = double(value);
            since_improvement = 0;
        } else {
            ++since_improvement;
        }
        return value;
    };

    while (result.evaluations < total_budget) {
        since_improvement = 0;
        auto engine = make_engine();
        const long long remaining = total_budget - result.evaluations;
        auto candidate = engine.optimize(
            monitored, lb, ub, pop_size, dim, remaining, rng,
            [&](int generation, std::span<const named_value<T>> params) {
                last_generation = generation_offset + generation;
                on_generation(last_generation, params);
            },
            [&] { return since_improvement >= criterion.stagnation_evals; });
        generation_offset = last_generation;
        ++result.engine_runs;
        if (candidate.fitness < result.best.fitness)
            result.best = candidate;
        if (since_improvement < criterion.stagnation_evals)
            break; // budget ran out rather than stagnation
    }
    return result;
}

} // namespace evobench::hybrid
