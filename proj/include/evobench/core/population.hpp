#pragma once

#include <algorithm>
#include <concepts>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "evobench/common.hpp"
#include "evobench/core/rng.hpp"

namespace evobench {

/// One candidate solution: a genome plus its cached objective value.
/// Lower fitness is better throughout the library.
template <std::floating_point T>
struct individual {
    std::vector<T> genome;
    T fitness = std::numeric_limits<T>::infinity();
    bool evaluated = false;

    individual() = default;
    explicit individual(int dim) : genome(static_cast<std::size_t>(dim), T(0)) {}

    int dim() const { return static_cast<int>(genome.size()); }

    template <typename F>
    void evaluate(F&& objective) {
        fitness = static_cast<T>(objective(std::span<const T>(genome)));
        evaluated = true;
    }
};

/// Fixed-dimension ordered collection of individuals.
template <std::floating_point T>
class population {
public:
    population() = default;

    population(int pop_size, int dim)
        : dim_(dim), members_(static_cast<std::size_t>(pop_size), individual<T>(dim)) {
        detail::require(pop_size > 0, "population: pop_size must be positive");
        detail::require(dim > 0, "population: dim must be positive");
    }

    int pop_size() const { return static_cast<int>(members_.size()); }
    int dim() const { return dim_; }

    individual<T>& operator[](int i) { return members_[static_cast<std::size_t>(i)]; }
    const individual<T>& operator[](int i) const { return members_[static_cast<std::size_t>(i)]; }

    auto begin() { return members_.begin(); }
    auto end() { return members_.end(); }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    /// Index of the best (lowest-fitness) member; ties go to the lowest index.
    int best_index() const {
        int best = 0;
        for (int i = 1; i < pop_size(); ++i)
            if (members_[std::size_t(i)].fitness < members_[std::size_t(best)].fitness)
                best = i;
        return best;
    }

    const individual<T>& best() const { return members_[std::size_t(best_index())]; }

    /// Member indices ordered by ascending fitness, ties by lower index.
    std::vector<int> fitness_order() const {
        std::vector<int> order(members_.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [this](int a, int b) {
            return members_[std::size_t(a)].fitness < members_[std::size_t(b)].fitness;
        });
        return order;
    }

    void erase_member(int i) { members_.erase(members_.begin() + i); }

private:
    int dim_ = 0;
    std::vector<individual<T>> members_;
};

/// Uniform random population in [lb, ub]^dim, all members unevaluated.
/// Draws genes individual-major, gene-minor from `rng`.
template <std::floating_point T>
population<T> init_population(int pop_size, int dim, T lb, T ub, rng_stream& rng) {
    detail::require(pop_size >= 4, "init_population: pop_size must be at least 4");
    detail::require(dim >= 1, "init_population: dim must be at least 1");
    detail::require(lb < ub, "init_population: lb must be less than ub");
    population<T> pop(pop_size, dim);
    for (auto& member : pop)
        for (auto& gene : member.genome)
            gene = static_cast<T>(rng.uniform(double(lb), double(ub)));
    return pop;
}

} // namespace evobench
