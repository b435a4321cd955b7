#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "evobench/core/rng.hpp"

namespace evobench::pso {

/// Velocity-update constants. Defaults are the SPSO2011 values
/// w = 1/(2 ln 2), c1 = c2 = c = 0.5 + ln 2.
template <std::floating_point T>
struct swarm_params {
    T inertia = T(1.0 / (2.0 * std::numbers::ln2));
    T cognitive = T(0.5 + std::numbers::ln2);
    T social = T(0.5 + std::numbers::ln2);
    T attraction = T(0.5 + std::numbers::ln2);
};

/// Uniform sample from the ball around `center` with radius `radius`:
/// a normalized Gaussian direction scaled by radius * u^(1/dim). Always
/// consumes dim normal pairs plus one uniform, so the draw pattern does
/// not depend on the radius.
template <std::floating_point T>
void sample_in_ball(std::span<const T> center, double radius, rng_stream& rng,
                    std::span<T> out) {
    const int dim = int(center.size());
    double norm_sq = 0.0;
    for (int j = 0; j < dim; ++j) {
        const double g = rng.normal(0.0, 1.0);
        out[std::size_t(j)] = T(g);
        norm_sq += g * g;
    }
    const double u = rng.uniform01();
    const double norm = std::sqrt(norm_sq);
    const double scale = norm > 0.0 ? radius * std::pow(u, 1.0 / double(dim)) / norm : 0.0;
    for (int j = 0; j < dim; ++j)
        out[std::size_t(j)] = center[std::size_t(j)] + T(scale * double(out[std::size_t(j)]));
}

/// Velocity rule slot: rewrites the particle's velocity from its position,
/// personal best, and neighborhood best. The engine then moves the
/// particle by the new velocity.
template <std::floating_point T>
class velocity_update_strategy {
public:
    virtual ~velocity_update_strategy() = default;
    virtual std::string_view name() const = 0;
    virtual void apply(std::span<const T> position, std::span<T> velocity,
                       std::span<const T> personal_best, std::span<const T> neighborhood_best,
                       bool neighbor_is_self, const swarm_params<T>& params,
                       rng_stream& rng) const = 0;
};

/// Canonical rule: v' = w v + c1 r1 (p - x) + c2 r2 (l - x) with
/// componentwise uniforms drawn pairwise per dimension.
template <std::floating_point T>
class standard_update final : public velocity_update_strategy<T> {
public:
    std::string_view name() const override { return "standard"; }

    void apply(std::span<const T> x, std::span<T> v, std::span<const T> p, std::span<const T> l,
               bool, const swarm_params<T>& params, rng_stream& rng) const override {
        for (std::size_t j = 0; j < x.size(); ++j) {
            const T r1 = T(rng.uniform01());
            const T r2 = T(rng.uniform01());
            v[j] = params.inertia * v[j] + params.cognitive * r1 * (p[j] - x[j]) +
                   params.social * r2 * (l[j] - x[j]);
        }
    }
};

/// SPSO2011 rule: sample y uniformly in the ball centred on the centroid
/// of x, x + c (p - x) and x + c (l - x) (the last dropped when the
/// neighborhood best is the particle itself) with radius |G - x|, then
/// v' = w v + (y - x).
template <std::floating_point T>
class spherical_update final : public velocity_update_strategy<T> {
public:
    std::string_view name() const override { return "spherical"; }

    void apply(std::span<const T> x, std::span<T> v, std::span<const T> p, std::span<const T> l,
               bool neighbor_is_self, const swarm_params<T>& params,
               rng_stream& rng) const override {
        const std::size_t dim = x.size();
        center_.resize(dim);
        sample_.resize(dim);
        double radius_sq = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const T pstar = x[j] + params.attraction * (p[j] - x[j]);
            T g;
            if (neighbor_is_self) {
                g = (x[j] + pstar) / T(2);
            } else {
                const T lstar = x[j] + params.attraction * (l[j] - x[j]);
                g = (x[j] + pstar + lstar) / T(3);
            }
            center_[j] = g;
            const double d = double(g - x[j]);
            radius_sq += d * d;
        }
        sample_in_ball<T>(center_, std::sqrt(radius_sq), rng, sample_);
        for (std::size_t j = 0; j < dim; ++j)
            v[j] = params.inertia * v[j] + (sample_[j] - x[j]);
    }

private:
    mutable std::vector<T> center_;
    mutable std::vector<T> sample_;
};

} // namespace evobench::pso
