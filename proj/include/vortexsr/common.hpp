#pragma once

#include <stdexcept>
#include <string>

namespace vortexsr {

// Natural units throughout: hbar = c = m = 1, so k0 = mc/hbar = 1 and
// e0^2 is the fine-structure constant.
inline constexpr double alpha_fs = 7.2973525693e-3;
inline constexpr double e0_sq = alpha_fs;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Thrown when a series/harmonic sum fails to reach the requested tolerance.
// Carries the last tail estimate so callers can report how far off we were.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double tail)
        : std::runtime_error(what), tail_estimate(tail) {}
    double tail_estimate;
};

} // namespace vortexsr
