#pragma once

#include <concepts>
#include <string_view>
#include <vector>

#include "evobench/core/population.hpp"

namespace evobench::pso {

/// Information topology: which personal best a particle listens to.
/// Queried against the personal-best list, ties resolve to the lowest
/// member index.
template <std::floating_point T>
class topology_strategy {
public:
    virtual ~topology_strategy() = default;
    virtual std::string_view name() const = 0;
    virtual int neighbor_best(const std::vector<individual<T>>& personal_bests,
                              int particle) const = 0;
};

template <std::floating_point T>
class gbest_topology final : public topology_strategy<T> {
public:
    std::string_view name() const override { return "gbest"; }

    int neighbor_best(const std::vector<individual<T>>& pbests, int) const override {
        int best = 0;
        for (int i = 1; i < int(pbests.size()); ++i)
            if (pbests[std::size_t(i)].fitness < pbests[std::size_t(best)].fitness)
                best = i;
        return best;
    }
};

/// Ring of width one: particle i listens to {i-1, i, i+1} mod N, itself
/// included.
template <std::floating_point T>
class lbest_topology final : public topology_strategy<T> {
public:
    std::string_view name() const override { return "lbest_ring"; }

    int neighbor_best(const std::vector<individual<T>>& pbests, int particle) const override {
        const int n = int(pbests.size());
        int best = -1;
        for (int off = -1; off <= 1; ++off) {
            const int c = ((particle + off) % n + n) % n;
            if (best < 0 || pbests[std::size_t(c)].fitness < pbests[std::size_t(best)].fitness ||
                (pbests[std::size_t(c)].fitness == pbests[std::size_t(best)].fitness && c < best))
                best = c;
        }
        return best;
    }
};

} // namespace evobench::pso
