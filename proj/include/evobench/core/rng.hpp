#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace evobench {

namespace detail {

// splitmix64 finalizer; full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace detail

/// Deterministic random stream: a xoshiro256++ generator seeded from a
/// (master_seed, stream_id) pair through a splitmix64 expansion. The same
/// pair yields the same sequence on every platform, and deriving a stream
/// is O(1) and independent of the order streams are created in, which is
/// what makes per-task seeding in the parallel harness reproducible.
///
/// All floating-point draws are computed in double precision from the raw
/// 64-bit output, never via std:: distributions (their sequences are not
/// portable across standard libraries).
class rng_stream {
public:
    rng_stream() : rng_stream(0, 0) {}

    rng_stream(std::uint64_t master_seed, std::uint64_t stream_id)
        : master_seed_(master_seed), stream_id_(stream_id) {
        std::uint64_t s = master_seed ^ detail::mix64(stream_id ^ 0xd1b54a32d192ed03ULL);
        for (auto& word : state_) {
            s += 0x9e3779b97f4a7c15ULL;
            word = detail::mix64(s);
        }
        state_[0] |= 1; // never the all-zero state
    }

    /// Test hook: a stream that replays `raw` cyclically instead of
    /// generating. Lets tests force exact quantiles through the same
    /// code paths production uses.
    static rng_stream scripted(std::vector<std::uint64_t> raw) {
        rng_stream r;
        r.script_ = std::move(raw);
        return r;
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        if (!script_.empty()) {
            std::uint64_t v = script_[script_pos_];
            script_pos_ = (script_pos_ + 1) % script_.size();
            return v;
        }
        const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log/atan argument.
    double uniform01_pos() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n), n > 0. Fixed-point multiply keeps the
    /// mapping platform-stable.
    int uniform_int(int n) {
        using u128 = unsigned __int128;
        return int((u128(next_u64()) * u128(std::uint64_t(n))) >> 64);
    }

    /// Box-Muller transform; consumes exactly two raw draws per call.
    double normal(double mean, double stddev) {
        const double u1 = uniform01_pos();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Cauchy via inverse CDF; consumes one raw draw per call.
    double cauchy(double location, double scale) {
        const double u = uniform01_pos();
        return location + scale * std::tan(std::numbers::pi * (u - 0.5));
    }

private:
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t master_seed_ = 0;
    std::uint64_t stream_id_ = 0;
    std::vector<std::uint64_t> script_;
    std::size_t script_pos_ = 0;
};

/// Sub-stream for task `task_index` of an experiment seeded with
/// `master_seed`. Independent of invocation order and thread placement.
inline rng_stream derive_stream(std::uint64_t master_seed, std::uint64_t task_index) {
    return rng_stream(master_seed, task_index);
}

} // namespace evobench
