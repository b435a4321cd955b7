#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <span>
#include <string_view>

namespace evobench::problems {

/// The base objective functions of the suite. All have their global
/// minimum value 0 at the origin except rosenbrock, whose minimum sits at
/// (1, ..., 1); instance pipelines evaluate rosenbrock on z + 1 so that
/// the shifted optimum is uniform across kinds.
enum class base_kind {
    sphere,
    elliptic,
    bent_cigar,
    discus,
    rosenbrock,
    rastrigin,
    ackley,
    griewank,
    schwefel_12,
    expanded_schaffer_f6,
};

inline std::string_view base_kind_name(base_kind kind) {
    switch (kind) {
    case base_kind::sphere: return "sphere";
    case base_kind::elliptic: return "elliptic";
    case base_kind::bent_cigar: return "bent_cigar";
    case base_kind::discus: return "discus";
    case base_kind::rosenbrock: return "rosenbrock";
    case base_kind::rastrigin: return "rastrigin";
    case base_kind::ackley: return "ackley";
    case base_kind::griewank: return "griewank";
    case base_kind::schwefel_12: return "schwefel_12";
    case base_kind::expanded_schaffer_f6: return "expanded_schaffer_f6";
    }
    return "?";
}

namespace kernels {

template <std::floating_point T>
T sphere(std::span<const T> z) {
    T acc = 0;
    for (T v : z)
        acc += v * v;
    return acc;
}

template <std::floating_point T>
T elliptic(std::span<const T> z) {
    const int d = int(z.size());
    const T denom = T(std::max(d - 1, 1));
    T acc = 0;
    for (int i = 0; i < d; ++i) {
        const T w = std::pow(T(10), T(6) * T(i) / denom);
        acc += w * z[std::size_t(i)] * z[std::size_t(i)];
    }
    return acc;
}

template <std::floating_point T>
T bent_cigar(std::span<const T> z) {
    T acc = 0;
    for (std::size_t i = 1; i < z.size(); ++i)
        acc += z[i] * z[i];
    return z[0] * z[0] + T(1e6) * acc;
}

template <std::floating_point T>
T discus(std::span<const T> z) {
    T acc = 0;
    for (std::size_t i = 1; i < z.size(); ++i)
        acc += z[i] * z[i];
    return T(1e6) * z[0] * z[0] + acc;
}

template <std::floating_point T>
T rosenbrock(std::span<const T> z) {
    T acc = 0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const T a = z[i] * z[i] - z[i + 1];
        const T b = z[i] - T(1);
        acc += T(100) * a * a + b * b;
    }
    return acc;
}

template <std::floating_point T>
T rastrigin(std::span<const T> z) {
    constexpr T two_pi = T(2) * std::numbers::pi_v<T>;
    T acc = 0;
    for (T v : z)
        acc += v * v - T(10) * std::cos(two_pi * v) + T(10);
    return acc;
}

template <std::floating_point T>
T ackley(std::span<const T> z) {
    constexpr T two_pi = T(2) * std::numbers::pi_v<T>;
    const T inv_d = T(1) / T(z.size());
    T sum_sq = 0, sum_cos = 0;
    for (T v : z) {
        sum_sq += v * v;
        sum_cos += std::cos(two_pi * v);
    }
    return T(-20) * std::exp(T(-0.2) * std::sqrt(sum_sq * inv_d)) - std::exp(sum_cos * inv_d) +
           T(20) + std::numbers::e_v<T>;
}

template <std::floating_point T>
T griewank(std::span<const T> z) {
    T sum = 0, prod = 1;
    for (std::size_t i = 0; i < z.size(); ++i) {
        sum += z[i] * z[i];
        prod *= std::cos(z[i] / std::sqrt(T(i + 1)));
    }
    return sum / T(4000) - prod + T(1);
}

template <std::floating_point T>
T schwefel_12(std::span<const T> z) {
    T acc = 0, cum = 0;
    for (T v : z) {
        cum += v;
        acc += cum * cum;
    }
    return acc;
}

template <std::floating_point T>
T schaffer_f6(T x, T y) {
    const T ssq = x * x + y * y;
    const T s = std::sin(std::sqrt(ssq));
    const T d = T(1) + T(0.001) * ssq;
    return T(0.5) + (s * s - T(0.5)) / (d * d);
}

template <std::floating_point T>
T expanded_schaffer_f6(std::span<const T> z) {
    const std::size_t d = z.size();
    if (d == 1)
        return schaffer_f6(z[0], z[0]);
    T acc = 0;
    for (std::size_t i = 0; i < d; ++i)
        acc += schaffer_f6(z[i], z[(i + 1) % d]);
    return acc;
}

} // namespace kernels

/// Standard-formula value of the named base function at z.
template <std::floating_point T>
T evaluate_base(base_kind kind, std::span<const T> z) {
    using namespace kernels;
    switch (kind) {
    case base_kind::sphere: return sphere(z);
    case base_kind::elliptic: return elliptic(z);
    case base_kind::bent_cigar: return bent_cigar(z);
    case base_kind::discus: return discus(z);
    case base_kind::rosenbrock: return rosenbrock(z);
    case base_kind::rastrigin: return rastrigin(z);
    case base_kind::ackley: return ackley(z);
    case base_kind::griewank: return griewank(z);
    case base_kind::schwefel_12: return schwefel_12(z);
    case base_kind::expanded_schaffer_f6: return expanded_schaffer_f6(z);
    }
    return T(0);
}

} // namespace evobench::problems
