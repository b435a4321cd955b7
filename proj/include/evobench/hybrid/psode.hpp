#pragma once

#include <concepts>
#include <functional>
#include <utility>

#include "evobench/common.hpp"
#include "evobench/de/engine.hpp"
#include "evobench/pso/engine.hpp"

namespace evobench::hybrid {

/// One PSO+DE hybrid generation over `pop`: both engines each advance a
/// copy of the population (PSO sharing `velocities`), velocities are then
/// rewritten from the DE displacement for every slot, and each slot keeps
/// the pairwise fitness winner — strict less-than, so ties go to the DE
/// offspring. Costs 2 * pop_size evaluations.
template <std::floating_point T, typename F>
void psode_generation(pso::pso_engine<T>& pso_engine, de::de_engine<T>& de_engine,
                      population<T>& pop, population<T>& pso_pop, population<T>& de_pop,
                      pso::pso_velocity<T>& velocities, evolution_state& st, F&& objective, T lb,
                      T ub, rng_stream& rng) {
    const int ps = pop.pop_size();
    const int dim = pop.dim();
    pso_pop = pop;
    de_pop = pop;
    pso_engine.generation(pso_pop, velocities, st, objective, lb, ub, rng);
    de_engine.generation(de_pop, st, objective, lb, ub, rng);
    for (int i = 0; i < ps; ++i)
        for (int j = 0; j < dim; ++j)
            velocities[std::size_t(i)][std::size_t(j)] =
                de_pop[i].genome[std::size_t(j)] - pop[i].genome[std::size_t(j)];
    for (int i = 0; i < ps; ++i)
        pop[i] = pso_pop[i].fitness < de_pop[i].fitness ? pso_pop[i] : de_pop[i];
    pso_engine.prepare(pop); // personal bests follow the replaced population
}

/// Full hybrid run. The DE engine must keep a fixed population size so
/// both engines stay slot-aligned.
template <std::floating_point T, typename F, typename GenHook>
individual<T> psode_run(pso::pso_engine<T>& pso_engine, de::de_engine<T>& de_engine, F&& objective,
                        T lb, T ub, int pop_size, int dim, long long max_fes, rng_stream& rng,
                        GenHook&& on_generation, const std::function<bool()>& stop = {}) {
    detail::require(de_engine.config().policy.kind == de::population_policy::kind_t::fixed,
                    "psode: the DE engine must use a fixed population policy");
    de_engine.validate_run(pop_size);

    evolution_state st(max_fes, pop_size, dim, std::min(4, pop_size));
    population<T> pop = init_population<T>(pop_size, dim, lb, ub, rng);
    for (auto& member : pop) {
        member.evaluate(objective);
        st.add_fes(1);
    }
    de_engine.archive().set_capacity(de_engine.archive_capacity_for(pop_size), rng);
    pso::pso_velocity<T> velocities(std::size_t(pop_size),
                                    std::vector<T>(std::size_t(dim), T(0)));
    pso_engine.prepare(pop);

    population<T> pso_pop(pop_size, dim);
    population<T> de_pop(pop_size, dim);
    std::vector<named_value<T>> params;
    int hybrid_generation = 0;
    while (st.budget_left() && !(stop && stop())) {
        psode_generation(pso_engine, de_engine, pop, pso_pop, de_pop, velocities, st, objective,
                         lb, ub, rng);
        ++hybrid_generation;
        params.clear();
        de_engine.parameter().append_parameters(params);
        if (!params.empty())
            on_generation(hybrid_generation, std::span<const named_value<T>>(params));
    }
    return pop.best();
}

} // namespace evobench::hybrid
