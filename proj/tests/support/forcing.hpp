#pragma once

// Helpers for scripting rng_stream raw words so that specific quantiles
// or integer draws come out of the production sampling paths.

#include <cmath>
#include <cstdint>

namespace forcing {

// Raw word w such that uniform_int(n) == k, i.e. (w * n) >> 64 == k.
inline std::uint64_t index(int k, int n) {
    using u128 = unsigned __int128;
    return std::uint64_t(((u128(std::uint64_t(k)) << 64) + (u128(1) << 63)) / u128(std::uint64_t(n)));
}

// Raw word w such that uniform01() == u (u rounded to 53-bit grid).
inline std::uint64_t quantile(double u) {
    return std::uint64_t(std::llround(u * 9007199254740992.0)) << 11; // u * 2^53
}

// Raw word w such that uniform01_pos() == u.
inline std::uint64_t quantile_pos(double u) {
    return (std::uint64_t(std::llround(u * 9007199254740992.0)) - 1) << 11;
}

} // namespace forcing
