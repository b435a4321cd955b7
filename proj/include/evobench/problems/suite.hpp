#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evobench/common.hpp"
#include "evobench/core/rng.hpp"
#include "evobench/problems/instance.hpp"

namespace evobench::problems {

struct problem_info {
    int id;
    std::string_view name;
    std::string_view kind;
};

/// The built-in registry: 2 unimodal + 6 multimodal shifted-rotated base
/// problems, 2 hybrids, 2 compositions. Bounds are [-100, 100] and the
/// bias is 100 * problem_id throughout.
inline const std::vector<problem_info>& problem_registry() {
    static const std::vector<problem_info> registry = {
        {1, "bent_cigar", "base"},
        {2, "elliptic", "base"},
        {3, "rosenbrock", "base"},
        {4, "rastrigin", "base"},
        {5, "ackley", "base"},
        {6, "griewank", "base"},
        {7, "schwefel_12", "base"},
        {8, "expanded_schaffer_f6", "base"},
        {9, "hybrid_a", "hybrid"},
        {10, "hybrid_b", "hybrid"},
        {11, "composition_a", "composition"},
        {12, "composition_b", "composition"},
    };
    return registry;
}

constexpr double default_lower_bound = -100.0;
constexpr double default_upper_bound = 100.0;

namespace detail {

inline std::uint64_t instance_stream_id(int problem_id, int instance_id, int dim) {
    using evobench::detail::mix64;
    return mix64(std::uint64_t(problem_id) ^
                 mix64(std::uint64_t(instance_id) ^ mix64(std::uint64_t(dim))));
}

inline base_kind base_kind_for(int problem_id) {
    switch (problem_id) {
    case 1: return base_kind::bent_cigar;
    case 2: return base_kind::elliptic;
    case 3: return base_kind::rosenbrock;
    case 4: return base_kind::rastrigin;
    case 5: return base_kind::ackley;
    case 6: return base_kind::griewank;
    case 7: return base_kind::schwefel_12;
    default: return base_kind::expanded_schaffer_f6;
    }
}

} // namespace detail

/// Deterministic seeded instance of a registry problem. The same
/// (problem, dim, instance, seed) tuple reproduces the same shift,
/// rotation, and auxiliary parameters on any platform.
template <std::floating_point T>
problem_instance<T> make_instance(int problem_id, int dim, int instance_id,
                                  std::uint64_t master_seed) {
    evobench::detail::require(problem_id >= 1 && problem_id <= int(problem_registry().size()),
                              "make_instance: unknown problem id " + std::to_string(problem_id));
    evobench::detail::require(dim >= 1, "make_instance: dim must be positive");
    evobench::detail::require(instance_id >= 1, "make_instance: instance ids start at 1");

    rng_stream rng = derive_stream(master_seed,
                                   detail::instance_stream_id(problem_id, instance_id, dim));
    const double lb = default_lower_bound, ub = default_upper_bound;
    const T bias = T(100.0 * problem_id);
    const std::string name(problem_registry()[std::size_t(problem_id - 1)].name);
    std::vector<double> rot_scratch;

    if (problem_id <= 8) {
        auto shift = detail::draw_shift<T>(dim, lb, ub, rng);
        auto rotation = detail::draw_rotation<T>(dim, rng, rot_scratch);
        return problem_instance<T>(problem_id, instance_id, dim, T(lb), T(ub), std::move(shift),
                                   std::move(rotation), bias, detail::base_kind_for(problem_id),
                                   name);
    }

    if (problem_id <= 10) {
        auto shift = detail::draw_shift<T>(dim, lb, ub, rng);
        auto rotation = detail::draw_rotation<T>(dim, rng, rot_scratch);
        hybrid_spec spec;
        if (problem_id == 9) {
            spec.proportions = {0.3, 0.3, 0.4};
            spec.sub_kinds = {base_kind::schwefel_12, base_kind::rastrigin, base_kind::elliptic};
        } else {
            spec.proportions = {0.2, 0.2, 0.3, 0.3};
            spec.sub_kinds = {base_kind::discus, base_kind::griewank, base_kind::rosenbrock,
                              base_kind::sphere};
        }
        spec.chunk_sizes = detail::hybrid_chunks(spec.proportions, dim);
        spec.permutation.resize(std::size_t(dim));
        for (int i = 0; i < dim; ++i)
            spec.permutation[std::size_t(i)] = i;
        for (int k = dim - 1; k >= 1; --k)
            std::swap(spec.permutation[std::size_t(k)],
                      spec.permutation[std::size_t(rng.uniform_int(k + 1))]);
        return problem_instance<T>(problem_id, instance_id, dim, T(lb), T(ub), std::move(shift),
                                   std::move(rotation), bias, std::move(spec), name);
    }

    composition_spec<T> spec;
    struct comp_recipe {
        base_kind kind;
        double sigma;
        double bias;
    };
    const std::vector<comp_recipe> recipe =
        problem_id == 11
            ? std::vector<comp_recipe>{{base_kind::rastrigin, 10.0, 0.0},
                                       {base_kind::griewank, 20.0, 100.0},
                                       {base_kind::sphere, 30.0, 200.0}}
            : std::vector<comp_recipe>{{base_kind::ackley, 10.0, 0.0},
                                       {base_kind::griewank, 20.0, 100.0},
                                       {base_kind::rastrigin, 30.0, 200.0},
                                       {base_kind::sphere, 40.0, 300.0}};
    for (const auto& r : recipe) {
        composition_component<T> comp;
        comp.kind = r.kind;
        comp.sigma = r.sigma;
        comp.lambda = 1.0;
        comp.bias = r.bias;
        comp.shift = detail::draw_shift<T>(dim, lb, ub, rng);
        comp.rotation = detail::draw_rotation<T>(dim, rng, rot_scratch);
        spec.components.push_back(std::move(comp));
    }
    return problem_instance<T>(problem_id, instance_id, dim, T(lb), T(ub), {}, {}, bias,
                               std::move(spec), name);
}

/// Ordered collection of generated instances, problem-major and
/// instance-minor, as configured by suite_builder.
template <std::floating_point T>
class suite {
public:
    suite(std::string name, int dim, std::vector<int> problem_ids, int instance_count,
          std::uint64_t master_seed, std::vector<problem_instance<T>> instances)
        : name_(std::move(name)),
          dim_(dim),
          problem_ids_(std::move(problem_ids)),
          instance_count_(instance_count),
          master_seed_(master_seed),
          instances_(std::move(instances)) {}

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const std::vector<int>& problem_ids() const { return problem_ids_; }
    int problem_count() const { return int(problem_ids_.size()); }
    int instance_count() const { return instance_count_; }
    std::uint64_t master_seed() const { return master_seed_; }

    int size() const { return int(instances_.size()); }

    const problem_instance<T>& at(int problem_ordinal, int instance_ordinal) const {
        return instances_[std::size_t(problem_ordinal * instance_count_ + instance_ordinal)];
    }

    auto begin() const { return instances_.begin(); }
    auto end() const { return instances_.end(); }

private:
    std::string name_;
    int dim_;
    std::vector<int> problem_ids_;
    int instance_count_;
    std::uint64_t master_seed_;
    std::vector<problem_instance<T>> instances_;
};

/// Builds a suite from problem ids, dimension, instance count and master
/// seed. Dimensions outside the whitelist need allow_any_dim().
template <std::floating_point T>
class suite_builder {
public:
    suite_builder& name(std::string n) {
        name_ = std::move(n);
        return *this;
    }

    suite_builder& dim(int d) {
        dim_ = d;
        return *this;
    }

    suite_builder& problem_ids(std::vector<int> ids) {
        problem_ids_ = std::move(ids);
        return *this;
    }

    suite_builder& instance_count(int n) {
        instance_count_ = n;
        return *this;
    }

    suite_builder& seed(std::uint64_t s) {
        master_seed_ = s;
        return *this;
    }

    suite_builder& allow_any_dim() {
        allow_any_dim_ = true;
        return *this;
    }

    suite<T> build() const {
        evobench::detail::require(!problem_ids_.empty(), "suite builder: empty problem list");
        evobench::detail::require(instance_count_ >= 1,
                                  "suite builder: instance count must be at least 1");
        evobench::detail::require(dim_ >= 1, "suite builder: dim must be positive");
        if (!allow_any_dim_) {
            static constexpr std::array whitelist{2, 10, 20, 30, 50, 100, 1000};
            bool ok = false;
            for (int d : whitelist)
                ok = ok || d == dim_;
            evobench::detail::require(
                ok, "suite builder: dim " + std::to_string(dim_) +
                        " not in the default whitelist; use allow_any_dim() to override");
        }
        for (int id : problem_ids_)
            evobench::detail::require(id >= 1 && id <= int(problem_registry().size()),
                                      "suite builder: unknown problem id " + std::to_string(id));

        std::vector<problem_instance<T>> instances;
        instances.reserve(problem_ids_.size() * std::size_t(instance_count_));
        for (int id : problem_ids_)
            for (int inst = 1; inst <= instance_count_; ++inst)
                instances.push_back(make_instance<T>(id, dim_, inst, master_seed_));
        return suite<T>(name_, dim_, problem_ids_, instance_count_, master_seed_,
                        std::move(instances));
    }

private:
    std::string name_ = "seeded12";
    int dim_ = 10;
    std::vector<int> problem_ids_;
    int instance_count_ = 1;
    std::uint64_t master_seed_ = 0;
    bool allow_any_dim_ = false;
};

} // namespace evobench::problems
