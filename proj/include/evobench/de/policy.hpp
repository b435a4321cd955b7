#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>

#include "evobench/common.hpp"
#include "evobench/core/population.hpp"
#include "evobench/core/state.hpp"

namespace evobench::de {

/// Population-size schedule: fixed, or a linear reduction from N_init to
/// N_min over the evaluation budget.
struct population_policy {
    enum class kind_t { fixed, linear_reduction };

    kind_t kind = kind_t::fixed;
    int n_init = 0;
    int n_min = 4;

    static population_policy fixed() { return {}; }

    static population_policy linear_reduction(int n_init, int n_min) {
        evobench::detail::require(n_min >= 4, "population_policy: N_min must be at least 4");
        evobench::detail::require(n_min <= n_init, "population_policy: N_min must not exceed N_init");
        return {kind_t::linear_reduction, n_init, n_min};
    }

    /// Scheduled size at the state's evaluation count.
    int target_size(const evolution_state& st) const {
        if (kind == kind_t::fixed)
            return st.pop_size_init();
        const double frac = double(st.current_fes()) / double(st.max_fes());
        const int target = int(std::lround(n_init + (n_min - n_init) * frac));
        return std::clamp(target, n_min, n_init);
    }
};

/// Shrinks the population to the policy's scheduled size by removing the
/// worst-fitness members; equal-fitness ties remove the higher index
/// first. No-op when the schedule allows the current size. Returns the
/// number of members removed.
template <std::floating_point T>
int reduce_population(population<T>& pop, const population_policy& policy,
                      const evolution_state& st) {
    if (policy.kind != population_policy::kind_t::linear_reduction)
        return 0;
    const int target = policy.target_size(st);
    int removed = 0;
    while (pop.pop_size() > target) {
        int worst = 0;
        for (int i = 1; i < pop.pop_size(); ++i)
            if (pop[i].fitness >= pop[worst].fitness)
                worst = i;
        pop.erase_member(worst);
        ++removed;
    }
    return removed;
}

} // namespace evobench::de
