#pragma once

#include <cmath>
#include <concepts>
#include <span>
#include <string_view>
#include <vector>

#include "evobench/common.hpp"
#include "evobench/core/population.hpp"
#include "evobench/core/rng.hpp"

namespace evobench::de {

/// Store of recently replaced parents, used as extra difference-vector
/// material by archive-aware mutation. A full archive overwrites a
/// uniformly random member; capacity 0 disables it entirely.
template <std::floating_point T>
class de_archive {
public:
    de_archive() = default;

    int capacity() const { return capacity_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool enabled() const { return capacity_ > 0; }

    const std::vector<T>& member(int j) const { return members_[std::size_t(j)]; }

    void push(const std::vector<T>& genome, rng_stream& rng) {
        if (capacity_ == 0)
            return;
        if (size() < capacity_) {
            members_.push_back(genome);
        } else {
            members_[std::size_t(rng.uniform_int(size()))] = genome;
        }
    }

    /// Shrinking evicts uniformly random members (swap-with-last).
    void set_capacity(int cap, rng_stream& rng) {
        capacity_ = cap;
        while (size() > capacity_) {
            const int victim = rng.uniform_int(size());
            std::swap(members_[std::size_t(victim)], members_.back());
            members_.pop_back();
        }
    }

    void clear() { members_.clear(); }

private:
    int capacity_ = 0;
    std::vector<std::vector<T>> members_;
};

/// Donor-vector construction slot of the DE engine.
template <std::floating_point T>
class mutation_strategy {
public:
    virtual ~mutation_strategy() = default;
    virtual std::string_view name() const = 0;

    /// Smallest population the strategy can draw distinct indices from.
    virtual int min_pop_size() const = 0;

    /// Writes the donor for `target`. fitness_order lists member indices by
    /// ascending fitness (ties toward lower index).
    virtual void mutate(const population<T>& pop, const de_archive<T>& archive,
                        std::span<const int> fitness_order, int target, T scale_factor,
                        rng_stream& rng, std::vector<T>& donor) const = 0;
};

/// DE/rand/1: v = x_r1 + F (x_r2 - x_r3).
template <std::floating_point T>
class rand1_mutation final : public mutation_strategy<T> {
public:
    std::string_view name() const override { return "rand_1"; }
    int min_pop_size() const override { return 4; }

    void mutate(const population<T>& pop, const de_archive<T>&, std::span<const int>, int target,
                T scale_factor, rng_stream& rng, std::vector<T>& donor) const override {
        const int ps = pop.pop_size();
        int r1, r2, r3;
        do { r1 = rng.uniform_int(ps); } while (r1 == target);
        do { r2 = rng.uniform_int(ps); } while (r2 == target || r2 == r1);
        do { r3 = rng.uniform_int(ps); } while (r3 == target || r3 == r1 || r3 == r2);

        const auto& a = pop[r1].genome;
        const auto& b = pop[r2].genome;
        const auto& c = pop[r3].genome;
        donor.resize(a.size());
        for (std::size_t j = 0; j < a.size(); ++j)
            donor[j] = a[j] + scale_factor * (b[j] - c[j]);
    }
};

/// DE/best/1: v = x_best + F (x_r1 - x_r2).
template <std::floating_point T>
class best1_mutation final : public mutation_strategy<T> {
public:
    std::string_view name() const override { return "best_1"; }
    int min_pop_size() const override { return 3; }

    void mutate(const population<T>& pop, const de_archive<T>&, std::span<const int> fitness_order,
                int target, T scale_factor, rng_stream& rng, std::vector<T>& donor) const override {
        const int ps = pop.pop_size();
        const int best = fitness_order[0];
        int r1, r2;
        do { r1 = rng.uniform_int(ps); } while (r1 == target);
        do { r2 = rng.uniform_int(ps); } while (r2 == target || r2 == r1);

        const auto& a = pop[best].genome;
        const auto& b = pop[r1].genome;
        const auto& c = pop[r2].genome;
        donor.resize(a.size());
        for (std::size_t j = 0; j < a.size(); ++j)
            donor[j] = a[j] + scale_factor * (b[j] - c[j]);
    }
};

/// DE/current-to-pbest/1: v = x_i + F (x_pbest - x_i) + F (x_r1 - x~_r2),
/// with x_pbest uniform among the best ceil(p * pop_size) members and
/// x~_r2 drawn from population or archive.
template <std::floating_point T>
class ttpb1_mutation final : public mutation_strategy<T> {
public:
    explicit ttpb1_mutation(T p_best_fraction, bool use_archive)
        : p_(p_best_fraction), use_archive_(use_archive) {
        evobench::detail::require(p_ > T(0) && p_ <= T(1),
                                  "ttpb1_mutation: p-best fraction must be in (0,1]");
    }

    std::string_view name() const override { return "ttpb_1"; }
    int min_pop_size() const override { return 3; }
    T p_best_fraction() const { return p_; }
    bool uses_archive() const { return use_archive_; }

    void mutate(const population<T>& pop, const de_archive<T>& archive,
                std::span<const int> fitness_order, int target, T scale_factor, rng_stream& rng,
                std::vector<T>& donor) const override {
        const int ps = pop.pop_size();
        // keep the p-best set non-degenerate down to the smallest populations
        const int p_count = std::min(ps, std::max(2, int(std::ceil(double(p_) * ps))));
        const int pbest = fitness_order[rng.uniform_int(p_count)];

        int r1;
        do { r1 = rng.uniform_int(ps); } while (r1 == target);

        const int pool = ps + (use_archive_ ? archive.size() : 0);
        int r2;
        do { r2 = rng.uniform_int(pool); } while (r2 == target || r2 == r1);
        const std::vector<T>& xr2 = r2 < ps ? pop[r2].genome : archive.member(r2 - ps);

        const auto& xi = pop[target].genome;
        const auto& xp = pop[pbest].genome;
        const auto& xr1 = pop[r1].genome;
        donor.resize(xi.size());
        for (std::size_t j = 0; j < xi.size(); ++j)
            donor[j] = xi[j] + scale_factor * (xp[j] - xi[j]) + scale_factor * (xr1[j] - xr2[j]);
    }

private:
    T p_;
    bool use_archive_;
};

/// Trial-vector mixing slot.
template <std::floating_point T>
class crossover_strategy {
public:
    virtual ~crossover_strategy() = default;
    virtual std::string_view name() const = 0;

    /// Writes the trial; both modes transfer at least one donor gene.
    virtual void cross(std::span<const T> target, std::span<const T> donor, T cr, rng_stream& rng,
                       std::vector<T>& trial) const = 0;
};

template <std::floating_point T>
class binomial_crossover final : public crossover_strategy<T> {
public:
    std::string_view name() const override { return "binomial"; }

    void cross(std::span<const T> target, std::span<const T> donor, T cr, rng_stream& rng,
               std::vector<T>& trial) const override {
        const int dim = static_cast<int>(target.size());
        const int jrand = rng.uniform_int(dim);
        trial.resize(target.size());
        for (int j = 0; j < dim; ++j) {
            const double u = rng.uniform01();
            trial[std::size_t(j)] =
                (u < double(cr) || j == jrand) ? donor[std::size_t(j)] : target[std::size_t(j)];
        }
    }
};

/// Copies a cyclic contiguous block from the donor, starting at a random
/// position and extended while u < CR.
template <std::floating_point T>
class exponential_crossover final : public crossover_strategy<T> {
public:
    std::string_view name() const override { return "exponential"; }

    void cross(std::span<const T> target, std::span<const T> donor, T cr, rng_stream& rng,
               std::vector<T>& trial) const override {
        const int dim = static_cast<int>(target.size());
        trial.assign(target.begin(), target.end());
        const int start = rng.uniform_int(dim);
        int length = 0;
        do {
            const int j = (start + length) % dim;
            trial[std::size_t(j)] = donor[std::size_t(j)];
            ++length;
        } while (length < dim && rng.uniform01() < double(cr));
    }
};

/// Box-constraint handling slot: every output gene ends inside [lb, ub]
/// and in-bounds genes pass through untouched.
template <std::floating_point T>
class repair_strategy {
public:
    virtual ~repair_strategy() = default;
    virtual std::string_view name() const = 0;
    virtual void repair(std::vector<T>& trial, std::span<const T> target, T lb, T ub,
                        rng_stream& rng) const = 0;
};

template <std::floating_point T>
class clip_repair final : public repair_strategy<T> {
public:
    std::string_view name() const override { return "clip"; }

    void repair(std::vector<T>& trial, std::span<const T>, T lb, T ub,
                rng_stream&) const override {
        for (T& g : trial) {
            if (g < lb) g = lb;
            if (g > ub) g = ub;
        }
    }
};

template <std::floating_point T>
class reflect_repair final : public repair_strategy<T> {
public:
    std::string_view name() const override { return "reflect"; }

    void repair(std::vector<T>& trial, std::span<const T>, T lb, T ub,
                rng_stream&) const override {
        for (T& g : trial) {
            for (int fold = 0; (g < lb || g > ub) && fold < 100; ++fold) {
                if (g < lb) g = lb + (lb - g);
                if (g > ub) g = ub - (g - ub);
            }
            if (g < lb) g = lb; // pathological magnitudes saturate
            if (g > ub) g = ub;
        }
    }
};

/// Violating gene moves to the midpoint of the violated bound and the
/// target's gene.
template <std::floating_point T>
class midpoint_target_repair final : public repair_strategy<T> {
public:
    std::string_view name() const override { return "midpoint_target"; }

    void repair(std::vector<T>& trial, std::span<const T> target, T lb, T ub,
                rng_stream&) const override {
        for (std::size_t j = 0; j < trial.size(); ++j) {
            if (trial[j] < lb)
                trial[j] = (lb + target[j]) / T(2);
            else if (trial[j] > ub)
                trial[j] = (ub + target[j]) / T(2);
        }
    }
};

template <std::floating_point T>
class reinitialize_repair final : public repair_strategy<T> {
public:
    std::string_view name() const override { return "reinitialize"; }

    void repair(std::vector<T>& trial, std::span<const T>, T lb, T ub,
                rng_stream& rng) const override {
        for (T& g : trial)
            if (g < lb || g > ub)
                g = T(rng.uniform(double(lb), double(ub)));
    }
};

} // namespace evobench::de
