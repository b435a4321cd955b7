#pragma once

#include <concepts>
#include <span>
#include <vector>

#include "evobench/common.hpp"

namespace evobench::experiment {

/// Identifies one task of an experiment: problem x instance x run.
/// Ordinals index the suite layout (and any preallocated grids); ids are
/// the user-facing registry numbers.
struct run_key {
    int problem_id = 0;
    int instance_id = 0;
    int problem_ordinal = 0;
    int instance_ordinal = 0;
    int run_index = 0;
};

/// Passive hook notified on every objective evaluation and once per
/// generation for algorithms that expose parameters. Observers never
/// mutate algorithm or problem state; on_run_end fires when a task
/// finishes so grid-backed observers can finalize their slots.
template <std::floating_point T>
class observer {
public:
    virtual ~observer() = default;
    virtual void on_evaluate(const run_key&, long long /*fes*/, T /*fitness*/) {}
    virtual void on_generation(const run_key&, int /*generation*/,
                               std::span<const named_value<T>> /*params*/) {}
    virtual void on_run_end(const run_key&) {}
};

/// Fan-out to several observers (non-owning).
template <std::floating_point T>
class multi_observer final : public observer<T> {
public:
    void add(observer<T>& child) { children_.push_back(&child); }

    void on_evaluate(const run_key& key, long long fes, T fitness) override {
        for (auto* c : children_)
            c->on_evaluate(key, fes, fitness);
    }

    void on_generation(const run_key& key, int generation,
                       std::span<const named_value<T>> params) override {
        for (auto* c : children_)
            c->on_generation(key, generation, params);
    }

    void on_run_end(const run_key& key) override {
        for (auto* c : children_)
            c->on_run_end(key);
    }

private:
    std::vector<observer<T>*> children_;
};

} // namespace evobench::experiment
