#pragma once

#include <concepts>
#include <memory>
#include <optional>
#include <utility>

#include "evobench/common.hpp"
#include "evobench/de/engine.hpp"

namespace evobench::de {

/// Assembles a DE engine slot by slot. Every slot must be set explicitly;
/// build() refuses to default a missing one and names it instead.
template <std::floating_point T>
class de_builder {
public:
    de_builder& mutation(std::unique_ptr<mutation_strategy<T>> m) {
        mutation_ = std::move(m);
        return *this;
    }

    de_builder& crossover(std::unique_ptr<crossover_strategy<T>> c) {
        crossover_ = std::move(c);
        return *this;
    }

    de_builder& repair(std::unique_ptr<repair_strategy<T>> r) {
        repair_ = std::move(r);
        return *this;
    }

    de_builder& parameter(std::unique_ptr<parameter_adapter<T>> p) {
        parameter_ = std::move(p);
        return *this;
    }

    de_builder& population(population_policy policy) {
        policy_ = policy;
        return *this;
    }

    /// Archive capacity as a fraction of population size; 0 disables the
    /// archive (valid, e.g. canonical SHADE without one).
    de_builder& archive_rate(T rate) {
        evobench::detail::require(rate >= T(0), "de builder: archive rate must be >= 0");
        archive_rate_ = rate;
        return *this;
    }

    de_engine<T> build() {
        evobench::detail::require(mutation_ != nullptr, "de builder: missing mutation strategy");
        evobench::detail::require(crossover_ != nullptr, "de builder: missing crossover strategy");
        evobench::detail::require(repair_ != nullptr, "de builder: missing repair strategy");
        evobench::detail::require(parameter_ != nullptr, "de builder: missing parameter adapter");
        evobench::detail::require(policy_.has_value(), "de builder: missing population policy");
        evobench::detail::require(archive_rate_.has_value(), "de builder: missing archive rate");

        de_config<T> cfg;
        cfg.mutation = std::move(mutation_);
        cfg.crossover = std::move(crossover_);
        cfg.repair = std::move(repair_);
        cfg.parameter = std::move(parameter_);
        cfg.policy = *policy_;
        cfg.archive_rate = *archive_rate_;
        return de_engine<T>(std::move(cfg));
    }

private:
    std::unique_ptr<mutation_strategy<T>> mutation_;
    std::unique_ptr<crossover_strategy<T>> crossover_;
    std::unique_ptr<repair_strategy<T>> repair_;
    std::unique_ptr<parameter_adapter<T>> parameter_;
    std::optional<population_policy> policy_;
    std::optional<T> archive_rate_;
};

} // namespace evobench::de
