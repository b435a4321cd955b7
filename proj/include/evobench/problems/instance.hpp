#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "evobench/common.hpp"
#include "evobench/core/rng.hpp"
#include "evobench/problems/functions.hpp"

namespace evobench::problems {

/// Dimension permutation plus proportional chunks, each chunk scored by
/// its own base function and the chunk values summed.
struct hybrid_spec {
    std::vector<int> permutation;
    std::vector<double> proportions;
    std::vector<base_kind> sub_kinds;
    std::vector<int> chunk_sizes; // derived from proportions, sums to dim
};

/// One member of a composition: its own shift, rotation, spread sigma,
/// scale lambda and additive bias.
template <std::floating_point T>
struct composition_component {
    base_kind kind;
    std::vector<T> shift;
    std::vector<T> rotation; // dim x dim, row-major
    double sigma = 10.0;
    double lambda = 1.0;
    double bias = 0.0;
};

template <std::floating_point T>
struct composition_spec {
    std::vector<composition_component<T>> components;
};

/// Per-task scratch for evaluations. Owned by one evaluation context so
/// the hot path never allocates once the buffers reach instance size.
template <std::floating_point T>
struct eval_scratch {
    std::vector<T> diff;
    std::vector<T> z;
    std::vector<T> zp;
    // batched-path buffers
    std::vector<T> soa_in;
    std::vector<T> soa_z;
    std::vector<T> col_a;
    std::vector<T> col_b;
    std::vector<T> col_c;
};

/// z = M (x - o). Row-major M; the difference is staged in scratch so the
/// loop is a plain matrix-vector product.
template <std::floating_point T>
void transform_input(std::span<const T> x, std::span<const T> shift, std::span<const T> rotation,
                     eval_scratch<T>& scratch, std::vector<T>& z_out) {
    const std::size_t d = x.size();
    scratch.diff.resize(d);
    for (std::size_t k = 0; k < d; ++k)
        scratch.diff[k] = x[k] - shift[k];
    z_out.resize(d);
    const T* m = rotation.data();
    for (std::size_t i = 0; i < d; ++i) {
        T acc = 0;
        const T* row = m + i * d;
        for (std::size_t k = 0; k < d; ++k)
            acc += row[k] * scratch.diff[k];
        z_out[i] = acc;
    }
}

namespace detail {

/// Base value with the optimum-at-origin convention: rosenbrock is
/// evaluated on z + 1, everything else directly.
template <std::floating_point T>
T base_value_origin(base_kind kind, std::span<const T> z, std::vector<T>& shifted_scratch) {
    if (kind == base_kind::rosenbrock) {
        shifted_scratch.resize(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
            shifted_scratch[i] = z[i] + T(1);
        return kernels::rosenbrock<T>(shifted_scratch);
    }
    return evaluate_base(kind, z);
}

} // namespace detail

/// Hybrid value at an already transformed point: permute, split into the
/// spec's chunks, sum the per-chunk base values.
template <std::floating_point T>
T evaluate_hybrid(const hybrid_spec& spec, std::span<const T> z, eval_scratch<T>& scratch) {
    const std::size_t d = z.size();
    scratch.zp.resize(d);
    for (std::size_t t = 0; t < d; ++t)
        scratch.zp[t] = z[std::size_t(spec.permutation[t])];
    T total = 0;
    std::size_t offset = 0;
    for (std::size_t c = 0; c < spec.sub_kinds.size(); ++c) {
        const std::size_t len = std::size_t(spec.chunk_sizes[c]);
        total += detail::base_value_origin<T>(
            spec.sub_kinds[c], std::span<const T>(scratch.zp.data() + offset, len), scratch.diff);
        offset += len;
    }
    return total;
}

/// Distance-weighted mixture value at a raw point x. A zero distance to
/// any component collapses the weights onto the zero-distance components.
template <std::floating_point T>
T evaluate_composition(const composition_spec<T>& spec, std::span<const T> x,
                       eval_scratch<T>& scratch) {
    const std::size_t d = x.size();
    const std::size_t n = spec.components.size();
    static thread_local std::vector<double> weights;
    static thread_local std::vector<double> dist_sqs;
    weights.assign(n, 0.0);
    dist_sqs.assign(n, 0.0);

    int zero_count = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double dist_sq = 0.0;
        const auto& o = spec.components[k].shift;
        for (std::size_t j = 0; j < d; ++j) {
            const double dj = double(x[j]) - double(o[j]);
            dist_sq += dj * dj;
        }
        dist_sqs[k] = dist_sq;
        if (dist_sq == 0.0) {
            ++zero_count;
            weights[k] = -1.0; // marker
        } else {
            const double sigma = spec.components[k].sigma;
            weights[k] = (1.0 / std::sqrt(dist_sq)) *
                         std::exp(-dist_sq / (2.0 * double(d) * sigma * sigma));
        }
    }
    double wsum = 0.0;
    if (zero_count > 0) {
        for (auto& w : weights)
            w = w < 0.0 ? 1.0 : 0.0;
        wsum = double(zero_count);
    } else {
        for (double w : weights)
            wsum += w;
        if (wsum == 0.0) {
            // every raw weight underflowed; collapse onto the nearest component
            std::size_t nearest = 0;
            for (std::size_t k = 1; k < n; ++k)
                if (dist_sqs[k] < dist_sqs[nearest])
                    nearest = k;
            weights[nearest] = 1.0;
            wsum = 1.0;
        }
    }

    double value = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = weights[k] / wsum;
        if (w == 0.0)
            continue;
        const auto& comp = spec.components[k];
        transform_input<T>(x, comp.shift, comp.rotation, scratch, scratch.z);
        const T fk = detail::base_value_origin<T>(comp.kind, scratch.z, scratch.zp);
        value += w * (comp.lambda * double(fk) + comp.bias);
    }
    return T(value);
}

/// An immutable, evaluable benchmark instance: seeded shift/rotation (or
/// per-component transforms), bias, bounds, and the function spec.
/// Evaluation is pure; scratch lives outside the instance so one instance
/// can be shared across concurrent tasks.
template <std::floating_point T>
class problem_instance {
public:
    using spec_type = std::variant<base_kind, hybrid_spec, composition_spec<T>>;

    problem_instance(int problem_id, int instance_id, int dim, T lb, T ub, std::vector<T> shift,
                     std::vector<T> rotation, T bias, spec_type spec, std::string name)
        : problem_id_(problem_id),
          instance_id_(instance_id),
          dim_(dim),
          lb_(lb),
          ub_(ub),
          shift_(std::move(shift)),
          rotation_(std::move(rotation)),
          bias_(bias),
          spec_(std::move(spec)),
          name_(std::move(name)) {}

    int problem_id() const { return problem_id_; }
    int instance_id() const { return instance_id_; }
    int dim() const { return dim_; }
    T lb() const { return lb_; }
    T ub() const { return ub_; }
    T bias() const { return bias_; }
    const std::vector<T>& shift() const { return shift_; }
    const std::vector<T>& rotation() const { return rotation_; }
    const spec_type& spec() const { return spec_; }
    const std::string& name() const { return name_; }

    bool is_base() const { return std::holds_alternative<base_kind>(spec_); }
    bool is_hybrid() const { return std::holds_alternative<hybrid_spec>(spec_); }
    bool is_composition() const { return std::holds_alternative<composition_spec<T>>(spec_); }

    std::string_view kind_name() const {
        if (is_base())
            return "base";
        return is_hybrid() ? "hybrid" : "composition";
    }

    /// Full pipeline value (bias included). Counts nothing; evaluation
    /// accounting belongs to the experiment harness.
    T evaluate(std::span<const T> x, eval_scratch<T>& scratch) const {
        if (int(x.size()) != dim_)
            throw std::invalid_argument("problem_instance: point dimension mismatch");
        if (const auto* base = std::get_if<base_kind>(&spec_)) {
            transform_input<T>(x, shift_, rotation_, scratch, scratch.z);
            return detail::base_value_origin<T>(*base, scratch.z, scratch.zp) + bias_;
        }
        if (const auto* hybrid = std::get_if<hybrid_spec>(&spec_)) {
            transform_input<T>(x, shift_, rotation_, scratch, scratch.z);
            return evaluate_hybrid<T>(*hybrid, scratch.z, scratch) + bias_;
        }
        return evaluate_composition<T>(std::get<composition_spec<T>>(spec_), x, scratch) + bias_;
    }

    /// Convenience overload with its own scratch; fine for tests, not for
    /// hot loops.
    T evaluate(std::span<const T> x) const {
        eval_scratch<T> scratch;
        return evaluate(x, scratch);
    }

private:
    int problem_id_;
    int instance_id_;
    int dim_;
    T lb_, ub_;
    std::vector<T> shift_;
    std::vector<T> rotation_;
    T bias_;
    spec_type spec_;
    std::string name_;
};

namespace detail {

/// Rows of a seeded Gaussian matrix orthonormalized by modified
/// Gram-Schmidt, run twice; generation happens in double regardless of T.
inline void random_rotation(int dim, rng_stream& rng, std::vector<double>& m) {
    const std::size_t d = std::size_t(dim);
    m.resize(d * d);
    for (auto& v : m)
        v = rng.normal(0.0, 1.0);
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < d; ++i) {
            double* row = m.data() + i * d;
            for (std::size_t j = 0; j < i; ++j) {
                const double* prev = m.data() + j * d;
                double proj = 0.0;
                for (std::size_t k = 0; k < d; ++k)
                    proj += row[k] * prev[k];
                for (std::size_t k = 0; k < d; ++k)
                    row[k] -= proj * prev[k];
            }
            double norm_sq = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                norm_sq += row[k] * row[k];
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (std::size_t k = 0; k < d; ++k)
                row[k] *= inv;
        }
    }
}

template <std::floating_point T>
std::vector<T> draw_shift(int dim, double lb, double ub, rng_stream& rng) {
    std::vector<T> o(static_cast<std::size_t>(dim));
    for (auto& v : o)
        v = T(rng.uniform(0.8 * lb, 0.8 * ub));
    return o;
}

template <std::floating_point T>
std::vector<T> draw_rotation(int dim, rng_stream& rng, std::vector<double>& scratch) {
    random_rotation(dim, rng, scratch);
    return std::vector<T>(scratch.begin(), scratch.end());
}

/// ceil(p_k dim) chunks, clamped so every chunk gets at least one
/// dimension and the last absorbs the rounding.
inline std::vector<int> hybrid_chunks(const std::vector<double>& proportions, int dim) {
    const int k = int(proportions.size());
    evobench::detail::require(dim >= k, "hybrid: dim must be at least the number of chunks");
    std::vector<int> sizes(static_cast<std::size_t>(k));
    int used = 0;
    for (int c = 0; c < k - 1; ++c) {
        int s = int(std::ceil(proportions[std::size_t(c)] * dim));
        s = std::max(1, std::min(s, dim - used - (k - 1 - c)));
        sizes[std::size_t(c)] = s;
        used += s;
    }
    sizes[std::size_t(k - 1)] = dim - used;
    return sizes;
}

} // namespace detail

} // namespace evobench::problems
