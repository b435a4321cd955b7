#pragma once

#include <cmath>
#include <numbers>

namespace evobench::problems::simd {

// Branch-free trig used by the single-precision batched kernels: argument
// reduction and a degree-13 polynomial evaluated in double, selects
// instead of branches, so the surrounding loops stay auto-vectorizable.
// Absolute error is below 1e-9, well inside the batched-vs-scalar
// tolerance. The double-precision kernels keep libm.

namespace detail {

inline double sin_from_turns(double r) {
    // r in turns; fold to a quarter wave and evaluate the Taylor series.
    r -= std::nearbyint(r); // [-0.5, 0.5]
    const double sign = r < 0.0 ? -1.0 : 1.0;
    double a = std::abs(r);
    a = a > 0.25 ? 0.5 - a : a; // [0, 0.25] turns = [0, pi/2] radians
    const double t = 2.0 * std::numbers::pi * a;
    const double t2 = t * t;
    double p = 1.0 / 6227020800.0; // 1/13!
    p = p * t2 - 1.0 / 39916800.0;
    p = p * t2 + 1.0 / 362880.0;
    p = p * t2 - 1.0 / 5040.0;
    p = p * t2 + 1.0 / 120.0;
    p = p * t2 - 1.0 / 6.0;
    p = p * t2 + 1.0;
    return sign * t * p;
}

} // namespace detail

inline float fast_sin(float x) {
    constexpr double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);
    return float(detail::sin_from_turns(double(x) * inv_two_pi));
}

inline float fast_cos(float x) {
    constexpr double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);
    return float(detail::sin_from_turns(double(x) * inv_two_pi + 0.25));
}

} // namespace evobench::problems::simd
