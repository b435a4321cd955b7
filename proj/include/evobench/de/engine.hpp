#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "evobench/common.hpp"
#include "evobench/core/population.hpp"
#include "evobench/core/rng.hpp"
#include "evobench/core/state.hpp"
#include "evobench/de/parameter.hpp"
#include "evobench/de/policy.hpp"
#include "evobench/de/strategy.hpp"

namespace evobench::de {

/// Greedy one-to-one selection: the trial replaces its parent when its
/// fitness is less than or equal (ties go to the trial), the replaced
/// parent's genome is pushed to the archive, and strictly improving
/// trials contribute (F, CR, fitness gain) to the success lists. Trials
/// that win are swapped into the population, so `trials` holds the
/// displaced parents afterwards.
template <std::floating_point T>
void select_and_archive(population<T>& pop, std::vector<individual<T>>& trials,
                        std::span<const de_trial_params<T>> params, de_archive<T>& archive,
                        rng_stream& rng, std::vector<T>& success_f, std::vector<T>& success_cr,
                        std::vector<T>& success_gain) {
    if (int(trials.size()) != pop.pop_size())
        throw std::logic_error("select_and_archive: trial count does not match population");
    for (int i = 0; i < pop.pop_size(); ++i) {
        auto& trial = trials[std::size_t(i)];
        if (trial.fitness <= pop[i].fitness) {
            const T gain = pop[i].fitness - trial.fitness;
            if (gain > T(0)) {
                success_f.push_back(params[std::size_t(i)].scale_factor);
                success_cr.push_back(params[std::size_t(i)].crossover_rate);
                success_gain.push_back(gain);
            }
            archive.push(pop[i].genome, rng);
            std::swap(pop[i], trial);
        }
    }
}

/// Fully specified strategy set for a DE engine. Produced by de_builder,
/// which guarantees every slot is filled.
template <std::floating_point T>
struct de_config {
    std::unique_ptr<mutation_strategy<T>> mutation;
    std::unique_ptr<crossover_strategy<T>> crossover;
    std::unique_ptr<repair_strategy<T>> repair;
    std::unique_ptr<parameter_adapter<T>> parameter;
    population_policy policy;
    T archive_rate = T(0);
};

/// Modular DE engine. A generation runs, for each target: sample control
/// parameters, mutate, cross over, repair, evaluate; then greedy
/// one-to-one selection with archiving, the adapter update, and the
/// population-size schedule. One engine instance belongs to one run.
template <std::floating_point T>
class de_engine {
public:
    explicit de_engine(de_config<T> config) : cfg_(std::move(config)) {}

    /// One full generation on an external population and state.
    template <typename F>
    void generation(population<T>& pop, evolution_state& st, F&& objective, T lb, T ub,
                    rng_stream& rng) {
        const int ps = pop.pop_size();
        const auto order = pop.fitness_order();

        trials_.resize(std::size_t(ps));
        params_.resize(std::size_t(ps));
        for (int i = 0; i < ps; ++i) {
            auto& trial = trials_[std::size_t(i)];
            params_[std::size_t(i)] = cfg_.parameter->sample(rng);
            const auto& p = params_[std::size_t(i)];
            cfg_.mutation->mutate(pop, archive_, order, i, p.scale_factor, rng, donor_);
            cfg_.crossover->cross(pop[i].genome, donor_, p.crossover_rate, rng, trial.genome);
            cfg_.repair->repair(trial.genome, pop[i].genome, lb, ub, rng);
            trial.evaluate(objective);
            st.add_fes(1);
        }

        success_f_.clear();
        success_cr_.clear();
        success_gain_.clear();
        select_and_archive<T>(pop, trials_, params_, archive_, rng, success_f_, success_cr_,
                              success_gain_);
        cfg_.parameter->update(success_f_, success_cr_, success_gain_);

        if (cfg_.policy.kind == population_policy::kind_t::linear_reduction) {
            if (reduce_population(pop, cfg_.policy, st) > 0)
                archive_.set_capacity(archive_capacity_for(pop.pop_size()), rng);
        }
        st.advance_generation();
    }

    /// Full run: initialize, evaluate, and iterate generations until the
    /// budget is exhausted or `stop` fires. Per-generation adapter
    /// parameters go to `on_generation(generation, named values)`.
    template <typename F, typename GenHook>
    individual<T> optimize(F&& objective, T lb, T ub, int pop_size, int dim, long long max_fes,
                           rng_stream& rng, GenHook&& on_generation,
                           const std::function<bool()>& stop = {}) {
        validate_run(pop_size);
        const int n_min = cfg_.policy.kind == population_policy::kind_t::linear_reduction
                              ? cfg_.policy.n_min
                              : std::min(4, pop_size);
        evolution_state st(max_fes, pop_size, dim, n_min);

        population<T> pop = init_population<T>(pop_size, dim, lb, ub, rng);
        for (auto& member : pop) {
            member.evaluate(objective);
            st.add_fes(1);
        }
        archive_.set_capacity(archive_capacity_for(pop_size), rng);

        while (st.budget_left() && !(stop && stop())) {
            generation(pop, st, objective, lb, ub, rng);
            gen_params_.clear();
            cfg_.parameter->append_parameters(gen_params_);
            if (!gen_params_.empty())
                on_generation(st.generation(), std::span<const named_value<T>>(gen_params_));
        }
        final_state_ = st;
        return pop.best();
    }

    /// Archive capacity for a population of `pop_size` under the
    /// configured rate.
    int archive_capacity_for(int pop_size) const {
        return int(std::ceil(double(cfg_.archive_rate) * double(pop_size)));
    }

    /// Back to the initial adaptation state (restart support); the next
    /// optimize() call re-sizes the archive.
    void reset() {
        cfg_.parameter->reset();
        archive_.clear();
    }

    void validate_run(int pop_size) const {
        evobench::detail::require(pop_size >= cfg_.mutation->min_pop_size(),
                        std::string("de_engine: population too small for mutation ") +
                            std::string(cfg_.mutation->name()));
    }

    const de_config<T>& config() const { return cfg_; }
    de_archive<T>& archive() { return archive_; }
    const de_archive<T>& archive() const { return archive_; }
    parameter_adapter<T>& parameter() { return *cfg_.parameter; }
    const evolution_state& final_state() const { return final_state_; }

private:
    de_config<T> cfg_;
    de_archive<T> archive_;
    evolution_state final_state_{1, 1, 1, 1};

    // per-generation scratch, reused across calls
    std::vector<individual<T>> trials_;
    std::vector<de_trial_params<T>> params_;
    std::vector<T> donor_;
    std::vector<T> success_f_, success_cr_, success_gain_;
    std::vector<named_value<T>> gen_params_;
};

} // namespace evobench::de
