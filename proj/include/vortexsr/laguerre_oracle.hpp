#pragma once

// Arbitrary-precision reference evaluation of the Laguerre functions and of
// integer-order Bessel functions by direct series summation. Validation
// scale only (indices <= 200); the fast recurrence path in
// special_functions.hpp is checked against this.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <stdexcept>
#include <string>

namespace vortexsr {

namespace detail {

template <class Real>
Real laguerre_function_mp(long n, long s, double x) {
    if (n < 0 || s < 0) return Real(0);
    if (n < s) {
        const Real sign = ((s - n) & 1) ? Real(-1) : Real(1);
        return sign * laguerre_function_mp<Real>(s, n, x);
    }
    const long l = n - s;
    const Real xr(x);
    if (xr == 0) return l == 0 ? Real(1) : Real(0);

    // Q_s^l(x) = sum_{k=0..s} (-1)^k C(s+l, s-k) x^k / k!
    Real term = Real(1);
    for (long j = 1; j <= s; ++j) term *= Real(l + j) / Real(j); // C(s+l, s)
    Real q = term;
    for (long k = 1; k <= s; ++k) {
        // C(s+l, s-k)/C(s+l, s-k+1) = (s-k+1)/(l+k)
        term *= -xr * Real(s - k + 1) / (Real(k) * Real(l + k));
        q += term;
    }

    // sqrt(s!/n!) = 1/sqrt((s+1)(s+2)...n)
    Real ratio = Real(1);
    for (long j = s + 1; j <= n; ++j) ratio *= Real(j);
    using boost::multiprecision::exp;
    using boost::multiprecision::pow;
    using boost::multiprecision::sqrt;
    return q * exp(-xr / 2) * pow(xr, Real(l) / 2) / sqrt(ratio);
}

template <class Real>
Real bessel_j_mp(long nu, double x) {
    const Real xr(x);
    if (xr == 0) return nu == 0 ? Real(1) : Real(0);
    const Real q = xr * xr / 4;
    Real term = Real(1);
    for (long j = 1; j <= nu; ++j) term *= xr / (2 * Real(j)); // (x/2)^nu / nu!
    Real sum = term;
    for (long k = 1; k < 1000; ++k) {
        term *= -q / (Real(k) * Real(k + nu));
        sum += term;
        using boost::multiprecision::fabs;
        if (fabs(term) < fabs(sum) * std::numeric_limits<Real>::epsilon()) break;
    }
    return sum;
}

} // namespace detail

// Evaluates I_{n,s}(x) at the requested number of significant digits by
// running the direct summation at two working precisions (2x and 4x the
// request) and demanding agreement.
inline double laguerre_function_oracle(long n, long s, double x, int precision_digits) {
    if (n > 200 || s > 200)
        throw std::domain_error("laguerre_function_oracle: validation scale is n, s <= 200");
    if (precision_digits < 1 || precision_digits > 45)
        throw std::domain_error("laguerre_function_oracle: supported precision is 1..45 digits");
    using lo = boost::multiprecision::cpp_dec_float_100;
    using hi = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<200>>;
    const lo a = detail::laguerre_function_mp<lo>(n, s, x);
    const hi b = detail::laguerre_function_mp<hi>(n, s, x);
    const hi diff = b - hi(a);
    using boost::multiprecision::fabs;
    const hi scale = fabs(b) > 0 ? fabs(b) : hi(1);
    if (fabs(diff) > scale * pow(hi(10), -precision_digits - 2))
        throw std::runtime_error(
            "laguerre_function_oracle: self-agreement failed at n=" + std::to_string(n) +
            ", s=" + std::to_string(s) + ", x=" + std::to_string(x) +
            " for " + std::to_string(precision_digits) + " digits");
    return b.convert_to<double>();
}

// Reference J_nu(x) by power-series summation at 100 decimal digits.
inline double bessel_j_oracle(long nu, double x) {
    if (nu < 0 || x < 0.0) throw std::domain_error("bessel_j_oracle: require nu, x >= 0");
    if (nu > 300 || x > 300.0)
        throw std::domain_error("bessel_j_oracle: validation scale is nu, x <= 300");
    using mp = boost::multiprecision::cpp_dec_float_100;
    return detail::bessel_j_mp<mp>(nu, x).convert_to<double>();
}

} // namespace vortexsr
