#pragma once

#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evobench {

/// Thrown when an algorithm, suite, or experiment is configured with
/// invalid or incomplete settings. The message names the offending part.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A labelled scalar, used to report per-generation algorithm parameters
/// (e.g. adaptation means) to observers without a fixed schema.
template <std::floating_point T>
struct named_value {
    std::string_view name;
    T value;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition)
        throw config_error(message);
}

} // namespace detail

} // namespace evobench
