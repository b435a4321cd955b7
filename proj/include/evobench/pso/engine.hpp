#pragma once

#include <concepts>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "evobench/common.hpp"
#include "evobench/core/population.hpp"
#include "evobench/core/rng.hpp"
#include "evobench/core/state.hpp"
#include "evobench/pso/topology.hpp"
#include "evobench/pso/update.hpp"

namespace evobench::pso {

template <std::floating_point T>
using pso_velocity = std::vector<std::vector<T>>;

template <std::floating_point T>
struct pso_config {
    std::unique_ptr<topology_strategy<T>> topology;
    std::unique_ptr<velocity_update_strategy<T>> update;
    swarm_params<T> params;
};

/// Modular PSO engine: topology x velocity rule. Personal bests live in
/// the engine; velocities are passed in so compositions (e.g. the PSO+DE
/// hybrid) can own and rewrite them. prepare() must run once on the
/// starting population and again after any external replacement.
template <std::floating_point T>
class pso_engine {
public:
    explicit pso_engine(pso_config<T> config) : cfg_(std::move(config)) {}

    /// Absorbs the population into the personal-best memory: first call
    /// copies, later calls keep the better of (stored pbest, member).
    void prepare(const population<T>& pop) {
        if (int(pbests_.size()) != pop.pop_size()) {
            pbests_.assign(std::size_t(pop.pop_size()), individual<T>(pop.dim()));
            for (int i = 0; i < pop.pop_size(); ++i)
                pbests_[std::size_t(i)] = pop[i];
            return;
        }
        for (int i = 0; i < pop.pop_size(); ++i)
            if (pop[i].fitness < pbests_[std::size_t(i)].fitness)
                pbests_[std::size_t(i)] = pop[i];
    }

    /// One generation: per particle, neighborhood lookup, velocity rule,
    /// move, bound handling (clamp + half-reversed velocity), evaluate,
    /// personal-best update. Particles are processed in index order and
    /// see earlier particles' fresh personal bests.
    template <typename F>
    void generation(population<T>& pop, pso_velocity<T>& velocities, evolution_state& st,
                    F&& objective, T lb, T ub, rng_stream& rng) {
        const int ps = pop.pop_size();
        for (int i = 0; i < ps; ++i) {
            auto& x = pop[i].genome;
            auto& v = velocities[std::size_t(i)];
            const int nb = cfg_.topology->neighbor_best(pbests_, i);
            cfg_.update->apply(x, v, pbests_[std::size_t(i)].genome, pbests_[std::size_t(nb)].genome,
                               nb == i, cfg_.params, rng);
            for (std::size_t j = 0; j < x.size(); ++j) {
                x[j] += v[j];
                if (x[j] < lb) {
                    x[j] = lb;
                    v[j] = T(-0.5) * v[j];
                } else if (x[j] > ub) {
                    x[j] = ub;
                    v[j] = T(-0.5) * v[j];
                }
            }
            pop[i].evaluate(objective);
            st.add_fes(1);
            if (pop[i].fitness < pbests_[std::size_t(i)].fitness)
                pbests_[std::size_t(i)] = pop[i];
        }
        st.advance_generation();
    }

    /// Full run with zero-initialized velocities.
    template <typename F>
    individual<T> optimize(F&& objective, T lb, T ub, int pop_size, int dim, long long max_fes,
                           rng_stream& rng, const std::function<bool()>& stop = {}) {
        evolution_state st(max_fes, pop_size, dim, std::min(4, pop_size));
        population<T> pop = init_population<T>(pop_size, dim, lb, ub, rng);
        for (auto& member : pop) {
            member.evaluate(objective);
            st.add_fes(1);
        }
        pso_velocity<T> velocities(std::size_t(pop_size), std::vector<T>(std::size_t(dim), T(0)));
        pbests_.clear();
        prepare(pop);
        while (st.budget_left() && !(stop && stop()))
            generation(pop, velocities, st, objective, lb, ub, rng);
        final_state_ = st;
        int best = 0;
        for (int i = 1; i < int(pbests_.size()); ++i)
            if (pbests_[std::size_t(i)].fitness < pbests_[std::size_t(best)].fitness)
                best = i;
        return pbests_[std::size_t(best)];
    }

    const std::vector<individual<T>>& personal_bests() const { return pbests_; }
    const pso_config<T>& config() const { return cfg_; }
    const evolution_state& final_state() const { return final_state_; }

private:
    pso_config<T> cfg_;
    std::vector<individual<T>> pbests_;
    evolution_state final_state_{1, 1, 1, 1};
};

/// Assembles a PSO engine; both strategy slots are mandatory and a
/// missing one is reported by name.
template <std::floating_point T>
class pso_builder {
public:
    pso_builder& topology(std::unique_ptr<topology_strategy<T>> t) {
        topology_ = std::move(t);
        return *this;
    }

    pso_builder& update(std::unique_ptr<velocity_update_strategy<T>> u) {
        update_ = std::move(u);
        return *this;
    }

    pso_builder& params(swarm_params<T> p) {
        params_ = p;
        return *this;
    }

    pso_engine<T> build() {
        evobench::detail::require(topology_ != nullptr, "pso builder: missing topology strategy");
        evobench::detail::require(update_ != nullptr, "pso builder: missing update strategy");
        pso_config<T> cfg;
        cfg.topology = std::move(topology_);
        cfg.update = std::move(update_);
        cfg.params = params_.value_or(swarm_params<T>{});
        return pso_engine<T>(std::move(cfg));
    }

private:
    std::unique_ptr<topology_strategy<T>> topology_;
    std::unique_ptr<velocity_update_strategy<T>> update_;
    std::optional<swarm_params<T>> params_;
};

} // namespace evobench::pso
