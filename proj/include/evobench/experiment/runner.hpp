#pragma once

#include <atomic>
#include <concepts>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "evobench/common.hpp"
#include "evobench/core/rng.hpp"
#include "evobench/experiment/observer.hpp"
#include "evobench/problems/batch.hpp"
#include "evobench/problems/suite.hpp"

namespace evobench::experiment {

struct bench_options {
    int independent_runs = 1;
    long long max_fes = 10000;
    bool parallel = true;
    int threads = 0; // 0: EVOBENCH_THREADS env var, then hardware concurrency
    std::uint64_t master_seed = 0;
};

/// What one task hands its algorithm: a counting, observer-notifying view
/// of the problem plus the task's private RNG stream. The handle owns the
/// evaluation scratch, so repeated evaluations do not allocate.
template <std::floating_point T>
class run_handle {
public:
    run_handle(const problems::problem_instance<T>& problem, observer<T>& obs, run_key key,
               long long max_fes, rng_stream rng)
        : problem_(&problem), obs_(&obs), key_(key), max_fes_(max_fes), rng_(rng) {}

    T evaluate(std::span<const T> x) {
        const T value = problem_->evaluate(x, scratch_);
        ++fes_;
        obs_->on_evaluate(key_, fes_, value);
        return value;
    }

    T operator()(std::span<const T> x) { return evaluate(x); }

    void evaluate_batch(const std::vector<std::vector<T>>& xs, std::vector<T>& out) {
        problems::evaluate_batch(*problem_, xs, scratch_, out);
        for (T value : out) {
            ++fes_;
            obs_->on_evaluate(key_, fes_, value);
        }
    }

    void notify_generation(int generation, std::span<const named_value<T>> params) {
        obs_->on_generation(key_, generation, params);
    }

    const problems::problem_instance<T>& problem() const { return *problem_; }
    const run_key& key() const { return key_; }
    int dim() const { return problem_->dim(); }
    T lb() const { return problem_->lb(); }
    T ub() const { return problem_->ub(); }
    long long max_fes() const { return max_fes_; }
    long long evaluations() const { return fes_; }
    rng_stream& rng() { return rng_; }

private:
    const problems::problem_instance<T>* problem_;
    observer<T>* obs_;
    run_key key_;
    long long max_fes_;
    long long fes_ = 0;
    rng_stream rng_;
    problems::eval_scratch<T> scratch_;
};

namespace detail {

inline int resolve_thread_count(int requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("EVOBENCH_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

} // namespace detail

/// Runs `alg` over every (problem, instance, run) task of the suite.
/// Each task derives its RNG stream from the master seed and its task
/// index — ((problem_ordinal * instances) + instance_ordinal) * runs +
/// run_index — so outcomes are independent of scheduling and thread
/// count; parallel and sequential execution produce identical observer
/// data. The algorithm callable must be safe to invoke concurrently
/// (build per-run state inside the call).
template <std::floating_point T, typename Alg>
void evo_bench(const Alg& alg, const problems::suite<T>& su, observer<T>& obs,
               const bench_options& opt) {
    evobench::detail::require(opt.independent_runs >= 1,
                              "evo_bench: independent_runs must be at least 1");
    evobench::detail::require(opt.max_fes >= 1, "evo_bench: max_fes must be positive");

    const int instances = su.instance_count();
    const int runs = opt.independent_runs;
    const long long total = (long long)su.problem_count() * instances * runs;

    const auto run_task = [&](long long task_index) {
        const int p = int(task_index / ((long long)(instances) * runs));
        const long long rem = task_index % ((long long)(instances) * runs);
        const int i = int(rem / runs);
        const int r = int(rem % runs);
        const auto& problem = su.at(p, i);
        const run_key key{problem.problem_id(), problem.instance_id(), p, i, r};
        run_handle<T> handle(problem, obs, key, opt.max_fes,
                             derive_stream(opt.master_seed, std::uint64_t(task_index)));
        alg(handle);
        obs.on_run_end(key);
    };

    const int workers = opt.parallel ? std::min<long long>(detail::resolve_thread_count(opt.threads),
                                                           total)
                                     : 1;
    if (workers <= 1) {
        for (long long t = 0; t < total; ++t)
            run_task(t);
        return;
    }

    std::atomic<long long> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const long long t = next.fetch_add(1, std::memory_order_relaxed);
                if (t >= total)
                    return;
                try {
                    run_task(t);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace evobench::experiment
