#pragma once

#include <cstdint>

#include "evobench/common.hpp"

namespace evobench {

/// Evaluation-budget bookkeeping for one optimization run. current_fes
/// counts every objective evaluation the run performs; it never decreases
/// and may overshoot max_fes by at most one population batch.
class evolution_state {
public:
    evolution_state(long long max_fes, int pop_size_init, int dim, int pop_size_min = 4)
        : max_fes_(max_fes),
          pop_size_init_(pop_size_init),
          pop_size_min_(pop_size_min),
          dim_(dim) {
        detail::require(max_fes > 0, "evolution_state: max_fes must be positive");
        detail::require(pop_size_init > 0, "evolution_state: pop_size_init must be positive");
        detail::require(pop_size_min > 0 && pop_size_min <= pop_size_init,
                        "evolution_state: pop_size_min must be in [1, pop_size_init]");
        detail::require(dim > 0, "evolution_state: dim must be positive");
    }

    void add_fes(long long n) {
        detail::require(n >= 0, "evolution_state: add_fes requires n >= 0");
        current_fes_ += n;
    }

    void advance_generation() { ++generation_; }

    long long current_fes() const { return current_fes_; }
    long long max_fes() const { return max_fes_; }
    int generation() const { return generation_; }
    int pop_size_init() const { return pop_size_init_; }
    int pop_size_min() const { return pop_size_min_; }
    int dim() const { return dim_; }

    bool budget_left() const { return current_fes_ < max_fes_; }

private:
    long long current_fes_ = 0;
    long long max_fes_ = 0;
    int generation_ = 0;
    int pop_size_init_ = 0;
    int pop_size_min_ = 4;
    int dim_ = 0;
};

} // namespace evobench
