#pragma once

// Thin wrapper around adaptive Gauss-Kronrod (G7/K15) panels.

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace vortexsr {

template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-12,
                 double* err_out = nullptr) {
    double error = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, /*max_depth=*/15, rel_tol, &error);
    if (err_out) *err_out = error;
    return v;
}

} // namespace vortexsr
