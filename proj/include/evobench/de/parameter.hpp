#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include "evobench/common.hpp"
#include "evobench/core/rng.hpp"

namespace evobench::de {

/// Per-trial control parameters drawn from an adapter. memory_slot is the
/// success-history index the draw came from (SHADE), or -1.
template <std::floating_point T>
struct de_trial_params {
    T scale_factor;
    T crossover_rate;
    int memory_slot = -1;
};

namespace detail {

// F ~ Cauchy(mu, 0.1), resampled while <= 0 (capped attempts), clipped to 1.
inline double sample_scale_factor(rng_stream& rng, double mu) {
    double f = 0.0;
    for (int attempt = 0; attempt < 100; ++attempt) {
        f = rng.cauchy(mu, 0.1);
        if (f > 0.0)
            break;
    }
    if (f <= 0.0)
        f = 0.1;
    return std::min(f, 1.0);
}

// CR ~ Normal(mu, 0.1) clipped to [0, 1].
inline double sample_crossover_rate(rng_stream& rng, double mu) {
    return std::clamp(rng.normal(mu, 0.1), 0.0, 1.0);
}

inline double lehmer_mean(std::span<const double> values) {
    double num = 0.0, den = 0.0;
    for (double v : values) {
        num += v * v;
        den += v;
    }
    return num / den;
}

} // namespace detail

/// Strategy slot for F/CR control: fixed constants, JADE scalar means, or
/// a SHADE success-history memory.
template <std::floating_point T>
class parameter_adapter {
public:
    virtual ~parameter_adapter() = default;
    virtual std::string_view name() const = 0;

    virtual de_trial_params<T> sample(rng_stream& rng) = 0;

    /// Feed back the generation's successful trials. All three spans have
    /// equal length and fitness_gains entries are strictly positive; an
    /// empty success set leaves the state untouched.
    virtual void update(std::span<const T> success_f, std::span<const T> success_cr,
                        std::span<const T> fitness_gains) = 0;

    /// Current adaptation means for observers; adapters without evolving
    /// parameters append nothing.
    virtual void append_parameters(std::vector<named_value<T>>&) const {}

    virtual void reset() = 0;
};

template <std::floating_point T>
class fixed_parameter final : public parameter_adapter<T> {
public:
    fixed_parameter(T f, T cr) : f_(f), cr_(cr) {
        evobench::detail::require(f > T(0) && f <= T(1), "fixed_parameter: F must be in (0,1]");
        evobench::detail::require(cr >= T(0) && cr <= T(1), "fixed_parameter: CR must be in [0,1]");
    }

    std::string_view name() const override { return "fixed"; }

    de_trial_params<T> sample(rng_stream&) override { return {f_, cr_, -1}; }

    void update(std::span<const T>, std::span<const T>, std::span<const T>) override {}

    void reset() override {}

private:
    T f_, cr_;
};

template <std::floating_point T>
class jade_parameter final : public parameter_adapter<T> {
public:
    explicit jade_parameter(T learning_rate = T(0.1)) : learning_rate_(learning_rate) {
        evobench::detail::require(learning_rate > T(0) && learning_rate <= T(1),
                                  "jade_parameter: learning rate must be in (0,1]");
    }

    std::string_view name() const override { return "jade"; }

    de_trial_params<T> sample(rng_stream& rng) override {
        const T f = T(detail::sample_scale_factor(rng, double(mu_f_)));
        const T cr = T(detail::sample_crossover_rate(rng, double(mu_cr_)));
        return {f, cr, -1};
    }

    void update(std::span<const T> success_f, std::span<const T> success_cr,
                std::span<const T>) override {
        if (success_f.empty())
            return;
        std::vector<double> f(success_f.begin(), success_f.end());
        const double lehmer = detail::lehmer_mean(f);
        double cr_mean = 0.0;
        for (T cr : success_cr)
            cr_mean += double(cr);
        cr_mean /= double(success_cr.size());
        const double c = double(learning_rate_);
        mu_f_ = T((1.0 - c) * double(mu_f_) + c * lehmer);
        mu_cr_ = T((1.0 - c) * double(mu_cr_) + c * cr_mean);
    }

    void append_parameters(std::vector<named_value<T>>& out) const override {
        out.push_back({"mu_f", mu_f_});
        out.push_back({"mu_cr", mu_cr_});
    }

    void reset() override {
        mu_f_ = T(0.5);
        mu_cr_ = T(0.5);
    }

    T mu_f() const { return mu_f_; }
    T mu_cr() const { return mu_cr_; }

private:
    T learning_rate_;
    T mu_f_ = T(0.5);
    T mu_cr_ = T(0.5);
};

template <std::floating_point T>
class shade_parameter final : public parameter_adapter<T> {
public:
    explicit shade_parameter(int memory_size) : memory_size_(memory_size) {
        evobench::detail::require(memory_size >= 1, "shade_parameter: memory size must be >= 1");
        reset();
    }

    std::string_view name() const override { return "shade"; }

    de_trial_params<T> sample(rng_stream& rng) override {
        const int slot = rng.uniform_int(memory_size_);
        const T f = T(detail::sample_scale_factor(rng, double(memory_f_[std::size_t(slot)])));
        const T cr = T(detail::sample_crossover_rate(rng, double(memory_cr_[std::size_t(slot)])));
        return {f, cr, slot};
    }

    void update(std::span<const T> success_f, std::span<const T> success_cr,
                std::span<const T> fitness_gains) override {
        if (success_f.empty())
            return;
        double gain_sum = 0.0;
        for (T g : fitness_gains)
            gain_sum += double(g);
        double f_num = 0.0, f_den = 0.0, cr_acc = 0.0;
        for (std::size_t i = 0; i < success_f.size(); ++i) {
            const double w = double(fitness_gains[i]) / gain_sum;
            const double f = double(success_f[i]);
            f_num += w * f * f;
            f_den += w * f;
            cr_acc += w * double(success_cr[i]);
        }
        memory_f_[std::size_t(write_index_)] = T(f_num / f_den);
        memory_cr_[std::size_t(write_index_)] = T(cr_acc);
        write_index_ = (write_index_ + 1) % memory_size_;
    }

    void append_parameters(std::vector<named_value<T>>& out) const override {
        const auto mean = [](const std::vector<T>& v) {
            double s = 0.0;
            for (T x : v)
                s += double(x);
            return T(s / double(v.size()));
        };
        out.push_back({"mu_f", mean(memory_f_)});
        out.push_back({"mu_cr", mean(memory_cr_)});
    }

    void reset() override {
        memory_f_.assign(std::size_t(memory_size_), T(0.5));
        memory_cr_.assign(std::size_t(memory_size_), T(0.5));
        write_index_ = 0;
    }

    int memory_size() const { return memory_size_; }
    int write_index() const { return write_index_; }
    const std::vector<T>& memory_f() const { return memory_f_; }
    const std::vector<T>& memory_cr() const { return memory_cr_; }

private:
    int memory_size_;
    int write_index_ = 0;
    std::vector<T> memory_f_;
    std::vector<T> memory_cr_;
};

} // namespace evobench::de
