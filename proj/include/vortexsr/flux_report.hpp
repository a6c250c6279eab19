#pragma once

#include <cstddef>
#include <vector>

namespace vortexsr {

// One harmonic's integrated contribution, split by circular polarization.
struct HarmonicFlux {
    long nu;
    double plus;
    double minus;
    double quad_error;
    double total() const { return plus + minus; }
};

struct FluxReport {
    std::vector<HarmonicFlux> harmonics;
    double total_plus = 0.0;
    double total_minus = 0.0;
    double tail_estimate = 0.0; // last harmonic contribution / running total
    bool converged = false;
    long harmonics_used = 0;

    double total() const { return total_plus + total_minus; }
};

} // namespace vortexsr
