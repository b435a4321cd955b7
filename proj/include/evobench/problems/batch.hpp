#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <span>
#include <type_traits>
#include <vector>

#include "evobench/problems/instance.hpp"
#include "evobench/problems/simd_math.hpp"

namespace evobench::problems {

namespace batch_detail {

// Transcendental selection: the single-precision batched kernels use the
// polynomial approximations, the double-precision ones keep libm.
template <std::floating_point T>
inline T b_cos(T x) {
    if constexpr (std::is_same_v<T, float>)
        return simd::fast_cos(x);
    else
        return std::cos(x);
}

template <std::floating_point T>
inline T b_sin(T x) {
    if constexpr (std::is_same_v<T, float>)
        return simd::fast_sin(x);
    else
        return std::sin(x);
}

/// Shift + rotate a whole batch: soa_z[i*batch + b] = sum_k M[i][k] *
/// (x_b[k] - o[k]). Column tiles of 8 keep the rotation row in registers
/// across the tile, so M streams through once per tile instead of once
/// per point; the per-column accumulation order matches the scalar path
/// exactly.
template <std::floating_point T>
void transform_batch(std::span<const T> shift, std::span<const T> rotation,
                     const std::vector<std::vector<T>>& xs, int dim, eval_scratch<T>& scratch) {
    const int batch = int(xs.size());
    scratch.soa_in.resize(std::size_t(dim) * std::size_t(batch));
    scratch.soa_z.resize(std::size_t(dim) * std::size_t(batch));
    T* s = scratch.soa_in.data();
    for (int b = 0; b < batch; ++b) {
        const T* x = xs[std::size_t(b)].data();
        for (int k = 0; k < dim; ++k)
            s[std::size_t(k) * std::size_t(batch) + std::size_t(b)] = x[k] - shift[std::size_t(k)];
    }

    const T* m = rotation.data();
    T* z = scratch.soa_z.data();
    constexpr int tile = 8;
    int b0 = 0;
    for (; b0 + tile <= batch; b0 += tile) {
        for (int i = 0; i < dim; ++i) {
            T acc[tile] = {};
            const T* row = m + std::size_t(i) * std::size_t(dim);
            const T* sk = s + b0;
            for (int k = 0; k < dim; ++k) {
                const T mv = row[k];
                const T* col = sk + std::size_t(k) * std::size_t(batch);
                for (int u = 0; u < tile; ++u)
                    acc[u] += mv * col[u];
            }
            T* out = z + std::size_t(i) * std::size_t(batch) + std::size_t(b0);
            for (int u = 0; u < tile; ++u)
                out[u] = acc[u];
        }
    }
    for (; b0 < batch; ++b0) {
        for (int i = 0; i < dim; ++i) {
            T acc = 0;
            const T* row = m + std::size_t(i) * std::size_t(dim);
            for (int k = 0; k < dim; ++k)
                acc += row[k] * s[std::size_t(k) * std::size_t(batch) + std::size_t(b0)];
            z[std::size_t(i) * std::size_t(batch) + std::size_t(b0)] = acc;
        }
    }
}

/// Column-parallel base kernels over the SoA z block; per-column
/// accumulation runs in the same row order as the scalar kernels.
template <std::floating_point T>
void base_kernel_batch(base_kind kind, const T* z, int dim, int batch, T bias,
                       eval_scratch<T>& scratch, std::vector<T>& out) {
    constexpr T two_pi = T(2) * std::numbers::pi_v<T>;
    auto& a = scratch.col_a;
    auto& b2 = scratch.col_b;
    out.resize(std::size_t(batch));
    const auto row = [&](int i) { return z + std::size_t(i) * std::size_t(batch); };

    switch (kind) {
    case base_kind::sphere: {
        a.assign(std::size_t(batch), T(0));
        for (int i = 0; i < dim; ++i) {
            const T* zi = row(i);
            for (int b = 0; b < batch; ++b)
                a[std::size_t(b)] += zi[b] * zi[b];
        }
        for (int b = 0; b < batch; ++b)
            out[std::size_t(b)] = a[std::size_t(b)] + bias;
        break;
    }
    case base_kind::elliptic: {
        a.assign(std::size_t(batch), T(0));
        const T denom = T(std::max(dim - 1, 1));
        for (int i = 0; i < dim; ++i) {
            const T w = std::pow(T(10), T(6) * T(i) / denom);
            const T* zi = row(i);
            for (int b = 0; b < batch; ++b)
                a[std::size_t(b)] += w * zi[b] * zi[b];
        }
        for (int b = 0; b < batch; ++b)
            out[std::size_t(b)] = a[std::size_t(b)] + bias;
        break;
    }
    case base_kind::bent_cigar:
    case base_kind::discus: {
        a.assign(std::size_t(batch), T(0));
        for (int i = 1; i < dim; ++i) {
            const T* zi = row(i);
            for (int b = 0; b < batch; ++b)
                a[std::size_t(b)] += zi[b] * zi[b];
        }
        const T* z0 = row(0);
        if (kind == base_kind::bent_cigar) {
            for (int b = 0; b < batch; ++b)
                out[std::size_t(b)] = z0[b] * z0[b] + T(1e6) * a[std::size_t(b)] + bias;
        } else {
            for (int b = 0; b < batch; ++b)
                out[std::size_t(b)] = T(1e6) * z0[b] * z0[b] + a[std::size_t(b)] + bias;
        }
        break;
    }
    case base_kind::rosenbrock: {
        a.assign(std::size_t(batch), T(0));
        for (int i = 0; i + 1 < dim; ++i) {
            const T* zi = row(i);
            const T* zn = row(i + 1);
            for (int b = 0; b < batch; ++b) {
                const T wi = zi[b] + T(1);
                const T wn = zn[b] + T(1);
                const T q = wi * wi - wn;
                const T r = wi - T(1);
                a[std::size_t(b)] += T(100) * q * q + r * r;
            }
        }
        for (int b = 0; b < batch; ++b)
            out[std::size_t(b)] = a[std::size_t(b)] + bias;
        break;
    }
    case base_kind::rastrigin: {
        a.assign(std::size_t(batch), T(0));
        for (int i = 0; i < dim; ++i) {
            const T* zi = row(i);
            for (int b = 0; b < batch; ++b) {
                const T v = zi[b];
                a[std::size_t(b)] += v * v - T(10) * b_cos(two_pi * v) + T(10);
            }
        }
        for (int b = 0; b < batch; ++b)
            out[std::size_t(b)] = a[std::size_t(b)] + bias;
        break;
    }
    case base_kind::ackley: {
        a.assign(std::size_t(batch), T(0));
        b2.assign(std::size_t(batch), T(0));
        for (int i = 0; i < dim; ++i) {
            const T* zi = row(i);
            for (int b = 0; b < batch; ++b) {
                const T v = zi[b];
                a[std::size_t(b)] += v * v;
                b2[std::size_t(b)] += b_cos(two_pi * v);
            }
        }
        const T inv_d = T(1) / T(dim);
        for (int b = 0; b < batch; ++b)
            out[std::size_t(b)] = T(-20) * std::exp(T(-0.2) * std::sqrt(a[std::size_t(b)] * inv_d)) -
                                  std::exp(b2[std::size_t(b)] * inv_d) + T(20) +
                                  std::numbers::e_v<T> + bias;
        break;
    }
    case base_kind::griewank: {
        a.assign(std::size_t(batch), T(0));
        b2.assign(std::size_t(batch), T(1));
        for (int i = 0; i < dim; ++i) {
            const T* zi = row(i);
            const T sqrt_i = std::sqrt(T(i + 1));
            for (int b = 0; b < batch; ++b) {
                const T v = zi[b];
                a[std::size_t(b)] += v * v;
                b2[std::size_t(b)] *= b_cos(v / sqrt_i);
            }
        }
        for (int b = 0; b < batch; ++b)
            out[std::size_t(b)] = a[std::size_t(b)] / T(4000) - b2[std::size_t(b)] + T(1) + bias;
        break;
    }
    case base_kind::schwefel_12: {
        a.assign(std::size_t(batch), T(0)); // prefix sums
        b2.assign(std::size_t(batch), T(0));
        for (int i = 0; i < dim; ++i) {
            const T* zi = row(i);
            for (int b = 0; b < batch; ++b) {
                a[std::size_t(b)] += zi[b];
                b2[std::size_t(b)] += a[std::size_t(b)] * a[std::size_t(b)];
            }
        }
        for (int b = 0; b < batch; ++b)
            out[std::size_t(b)] = b2[std::size_t(b)] + bias;
        break;
    }
    case base_kind::expanded_schaffer_f6: {
        a.assign(std::size_t(batch), T(0));
        for (int i = 0; i < dim; ++i) {
            const T* zi = row(i);
            const T* zn = row(dim == 1 ? 0 : (i + 1) % dim);
            for (int b = 0; b < batch; ++b) {
                const T x = zi[b];
                const T y = zn[b];
                const T ssq = x * x + y * y;
                const T sv = b_sin(std::sqrt(ssq));
                const T dv = T(1) + T(0.001) * ssq;
                a[std::size_t(b)] += T(0.5) + (sv * sv - T(0.5)) / (dv * dv);
            }
        }
        for (int b = 0; b < batch; ++b)
            out[std::size_t(b)] = a[std::size_t(b)] + bias;
        break;
    }
    }
}

} // namespace batch_detail

/// Evaluates a batch of points. Values match the scalar path elementwise
/// (exactly in double, within the trig-approximation error in single
/// precision); the payoff is the data-parallel layout for the shift/rotate
/// and transcendental-sum hot loops.
template <std::floating_point T>
void evaluate_batch(const problem_instance<T>& problem, const std::vector<std::vector<T>>& xs,
                    eval_scratch<T>& scratch, std::vector<T>& out) {
    const int batch = int(xs.size());
    out.clear();
    if (batch == 0)
        return;
    for (const auto& x : xs)
        if (int(x.size()) != problem.dim())
            throw std::invalid_argument("evaluate_batch: point dimension mismatch");

    const int dim = problem.dim();
    if (const auto* base = std::get_if<base_kind>(&problem.spec())) {
        batch_detail::transform_batch<T>(problem.shift(), problem.rotation(), xs, dim, scratch);
        batch_detail::base_kernel_batch<T>(*base, scratch.soa_z.data(), dim, batch, problem.bias(),
                                           scratch, out);
        return;
    }
    if (const auto* hybrid = std::get_if<hybrid_spec>(&problem.spec())) {
        batch_detail::transform_batch<T>(problem.shift(), problem.rotation(), xs, dim, scratch);
        out.resize(std::size_t(batch));
        scratch.col_c.resize(std::size_t(dim));
        for (int b = 0; b < batch; ++b) {
            for (int i = 0; i < dim; ++i)
                scratch.col_c[std::size_t(i)] =
                    scratch.soa_z[std::size_t(i) * std::size_t(batch) + std::size_t(b)];
            out[std::size_t(b)] = evaluate_hybrid<T>(*hybrid, scratch.col_c, scratch) +
                                  problem.bias();
        }
        return;
    }
    // compositions evaluate per point (per-component transforms dominate)
    out.resize(std::size_t(batch));
    for (int b = 0; b < batch; ++b)
        out[std::size_t(b)] = problem.evaluate(xs[std::size_t(b)], scratch);
}

/// Convenience wrapper with its own scratch.
template <std::floating_point T>
std::vector<T> batched_evaluate(const problem_instance<T>& problem,
                                const std::vector<std::vector<T>>& xs) {
    eval_scratch<T> scratch;
    std::vector<T> out;
    evaluate_batch(problem, xs, scratch, out);
    return out;
}

} // namespace evobench::problems
