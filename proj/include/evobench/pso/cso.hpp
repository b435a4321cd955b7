#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <numeric>
#include <vector>

#include "evobench/common.hpp"
#include "evobench/core/population.hpp"
#include "evobench/core/rng.hpp"
#include "evobench/core/state.hpp"

namespace evobench::pso {

/// Competitive Swarm Optimizer: particles meet in random disjoint pairs,
/// the loser moves toward the winner and the swarm mean (weight phi) and
/// is re-evaluated; winners pass through untouched. Costs pop_size/2
/// evaluations per generation.
template <std::floating_point T>
class cso_optimizer {
public:
    explicit cso_optimizer(T phi = T(0.1)) : phi_(phi) {
        detail::require(std::isfinite(double(phi)), "cso: phi must be finite");
        detail::require(phi >= T(0), "cso: phi must be >= 0");
    }

    T phi() const { return phi_; }

    template <typename F>
    void generation(population<T>& pop, std::vector<std::vector<T>>& velocities,
                    evolution_state& st, F&& objective, T lb, T ub, rng_stream& rng) {
        const int ps = pop.pop_size();
        detail::require(ps % 2 == 0, "cso: population size must be even");
        const int dim = pop.dim();

        // swarm mean of the pre-update positions, computed once
        mean_.assign(std::size_t(dim), T(0));
        for (int i = 0; i < ps; ++i)
            for (int j = 0; j < dim; ++j)
                mean_[std::size_t(j)] += pop[i].genome[std::size_t(j)];
        for (auto& m : mean_)
            m /= T(ps);

        perm_.resize(std::size_t(ps));
        std::iota(perm_.begin(), perm_.end(), 0);
        for (int k = ps - 1; k >= 1; --k)
            std::swap(perm_[std::size_t(k)], perm_[std::size_t(rng.uniform_int(k + 1))]);

        for (int t = 0; t < ps / 2; ++t) {
            const int a = perm_[std::size_t(2 * t)];
            const int b = perm_[std::size_t(2 * t + 1)];
            const int winner = pop[a].fitness <= pop[b].fitness ? a : b;
            const int loser = winner == a ? b : a;

            auto& x = pop[loser].genome;
            auto& v = velocities[std::size_t(loser)];
            const auto& xw = pop[winner].genome;
            for (int j = 0; j < dim; ++j) {
                const T r1 = T(rng.uniform01());
                const T r2 = T(rng.uniform01());
                const T r3 = T(rng.uniform01());
                v[std::size_t(j)] = r1 * v[std::size_t(j)] +
                                    r2 * (xw[std::size_t(j)] - x[std::size_t(j)]) +
                                    phi_ * r3 * (mean_[std::size_t(j)] - x[std::size_t(j)]);
                x[std::size_t(j)] += v[std::size_t(j)];
                x[std::size_t(j)] = std::clamp(x[std::size_t(j)], lb, ub);
            }
            pop[loser].evaluate(objective);
            st.add_fes(1);
        }
        st.advance_generation();
    }

    template <typename F>
    individual<T> optimize(F&& objective, T lb, T ub, int pop_size, int dim, long long max_fes,
                           rng_stream& rng, const std::function<bool()>& stop = {}) {
        detail::require(pop_size % 2 == 0, "cso: population size must be even");
        evolution_state st(max_fes, pop_size, dim, std::min(4, pop_size));
        population<T> pop = init_population<T>(pop_size, dim, lb, ub, rng);
        for (auto& member : pop) {
            member.evaluate(objective);
            st.add_fes(1);
        }
        std::vector<std::vector<T>> velocities(std::size_t(pop_size),
                                               std::vector<T>(std::size_t(dim), T(0)));
        while (st.budget_left() && !(stop && stop()))
            generation(pop, velocities, st, objective, lb, ub, rng);
        final_state_ = st;
        return pop.best();
    }

    const evolution_state& final_state() const { return final_state_; }

private:
    T phi_;
    evolution_state final_state_{1, 1, 1, 1};
    std::vector<T> mean_;
    std::vector<int> perm_;
};

} // namespace evobench::pso
