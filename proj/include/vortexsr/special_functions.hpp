#pragma once

// Laguerre functions I_{n,s}(x) and integer-order Bessel functions J_nu, J'_nu.
//
// I_{n,s}(x) = sqrt(s!/n!) e^{-x/2} x^{(n-s)/2} Q_s^{n-s}(x) for n >= s,
// extended to n < s by the symmetry I_{n,s} = (-1)^{n-s} I_{s,n}, where
// Q_s^l is the generalized Laguerre polynomial. The family {I_{n,s}}_n at
// fixed s is orthonormal on [0, inf).
//
// Indices up to ~10^6 are supported: the polynomial is carried through the
// degree recurrence with a separate base-2 exponent, and the factorial /
// exponential prefactor is accumulated in log space.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "vortexsr/common.hpp"

namespace vortexsr {

namespace detail {

// Mantissa-exponent pair: value = frac * 2^exp2. Keeps the degree
// recurrence for Q_s^l in range for s up to 10^6.
struct Scaled {
    double frac;
    std::int64_t exp2;
};

// Q_s^l(x) in scaled form via the degree recurrence
//   (k+1) Q_{k+1}^l = (2k + l + 1 - x) Q_k^l - (k + l) Q_{k-1}^l ,
// with both trailing values kept on a shared base-2 exponent and rescaled
// whenever the mantissas drift out of a safe window. The mantissas are
// carried in long double: near a root of Q_s^l the recurrence cancels and
// the extra mantissa bits are what keep the final value to ~1e-13 relative.
inline Scaled laguerre_q_scaled(long s, long l, double x) {
    if (s == 0) return Scaled{1.0, 0};
    long double qk = 1.0L;                        // Q_0 = 1
    long double qk1 = (long double)l + 1.0L - x;  // Q_1
    std::int64_t exp2 = 0;
    for (long k = 1; k < s; ++k) {
        const long double a =
            ((2.0L * k + l + 1.0L - x) * qk1 - (k + (long double)l) * qk)
            / (k + 1.0L);
        qk = qk1;
        qk1 = a;
        const long double mag = std::fabs(qk1) > std::fabs(qk) ? std::fabs(qk1) : std::fabs(qk);
        if (mag > 1e230L || (mag < 1e-230L && mag > 0.0L)) {
            int e = 0;
            std::frexp(mag, &e);
            qk = std::ldexp(qk, -e);
            qk1 = std::ldexp(qk1, -e);
            exp2 += e;
        }
    }
    return Scaled{(double)qk1, exp2};
}

} // namespace detail

// Generalized Laguerre polynomial Q_s^l(x), plain double value.
inline double generalized_laguerre(long s, long l, double x) {
    if (s < 0 || l < 0 || x < 0.0 || !std::isfinite(x))
        throw std::domain_error("generalized_laguerre: require s>=0, l>=0, x>=0 (s=" +
                                std::to_string(s) + ", l=" + std::to_string(l) + ")");
    const detail::Scaled q = detail::laguerre_q_scaled(s, l, x);
    if (q.exp2 < -4000) return 0.0;
    const double v = std::ldexp(q.frac, (int)std::min<std::int64_t>(q.exp2, 4000));
    if (!std::isfinite(v))
        throw std::range_error("generalized_laguerre: overflow at s=" + std::to_string(s) +
                               ", l=" + std::to_string(l) + ", x=" + std::to_string(x));
    return v;
}

// Laguerre function I_{n,s}(x). Negative indices denote closed channels and
// give exactly zero (the n = 0 level has no lower neighbor).
inline double laguerre_function(long n, long s, double x) {
    if (n < 0 || s < 0) return 0.0;
    if (x < 0.0 || !std::isfinite(x))
        throw std::domain_error("laguerre_function: require x >= 0, got " + std::to_string(x));
    if (n < s) {
        const double sign = ((s - n) & 1) ? -1.0 : 1.0;
        return sign * laguerre_function(s, n, x);
    }
    const long l = n - s;
    if (x == 0.0) return l == 0 ? 1.0 : 0.0;

    const detail::Scaled q = detail::laguerre_q_scaled(s, l, x);
    if (q.frac == 0.0) return 0.0;
    const double logpref = 0.5 * (std::lgamma(s + 1.0) - std::lgamma(n + 1.0))
                           - 0.5 * x + 0.5 * l * std::log(x);
    const double t = logpref + (double)q.exp2 * 0.6931471805599453
                     + std::log(std::fabs(q.frac));
    if (t > 700.0)
        throw std::range_error("laguerre_function: overflow at n=" + std::to_string(n) +
                               ", s=" + std::to_string(s) + ", x=" + std::to_string(x));
    if (t < -745.0) return 0.0;
    return (q.frac < 0.0 ? -1.0 : 1.0) * std::exp(t);
}

namespace detail {

// J_0 and J_1 kernels: Maclaurin series below the crossover, Hankel
// asymptotic expansion above (both good to ~1e-15 at the crossover x = 13).
inline double bessel_j01_series(int nu, double x) {
    const double q = 0.25 * x * x;
    double term = nu == 0 ? 1.0 : 0.5 * x;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (k * (double)(k + nu));
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) break;
    }
    return sum;
}

inline double bessel_j01_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0;
    double ak = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double prev = std::fabs(ak);
        ak *= (mu - odd * odd) / (8.0 * k * x);
        if (std::fabs(ak) >= prev) break; // asymptotic series started to diverge
        switch (k & 3) {
            case 1: q += ak; break;
            case 2: p -= ak; break;
            case 3: q -= ak; break;
            case 0: p += ak; break;
        }
        if (std::fabs(ak) < 1e-18) break;
    }
    const double chi = x - (0.5 * nu + 0.25) * pi;
    return std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

inline double bessel_j01(int nu, double x) {
    return x <= 13.0 ? bessel_j01_series(nu, x) : bessel_j01_asymptotic(nu, x);
}

} // namespace detail

// (J_nu(x), J_{nu-1}(x)) for integer nu >= 0, x >= 0. The neighbor order is
// what the derivative identity J'_nu = J_{nu-1} - (nu/x) J_nu consumes.
inline std::pair<double, double> bessel_j_with_neighbor(long nu, double x) {
    if (nu < 0 || x < 0.0 || !std::isfinite(x))
        throw std::domain_error("bessel_j: require nu >= 0 and finite x >= 0");
    if (x == 0.0) {
        if (nu == 0) return {1.0, 0.0};          // J_{-1}(0) = 0
        return {0.0, nu == 1 ? 1.0 : 0.0};
    }
    if (nu == 0) return {detail::bessel_j01(0, x), -detail::bessel_j01(1, x)};
    if (nu == 1) return {detail::bessel_j01(1, x), detail::bessel_j01(0, x)};

    if ((double)nu < x) {
        // oscillatory regime: upward recurrence from the kernels is stable
        double jm = detail::bessel_j01(0, x);
        double j = detail::bessel_j01(1, x);
        for (long k = 1; k < nu; ++k) {
            const double jp = (2.0 * k / x) * j - jm;
            jm = j;
            j = jp;
        }
        return {j, jm};
    }

    // x <= nu: Miller backward recurrence, normalized by
    //   J_0 + 2 J_2 + 2 J_4 + ... = 1 .
    long m = nu + (long)(2.0 * std::sqrt(40.0 * (double)(nu + 1))) + 20;
    if (m & 1) ++m;
    double fp = 0.0, f = 1e-300;
    double sum = 0.0;
    double jnu = 0.0, jnum1 = 0.0;
    for (long k = m; k >= 1; --k) {
        const double fm = (2.0 * k / x) * f - fp;
        fp = f;
        f = fm;
        if (k - 1 == nu) jnu = f;
        if (k - 1 == nu - 1) jnum1 = f;
        if (((k - 1) & 1) == 0 && k - 1 > 0) sum += 2.0 * f;
        if (std::fabs(f) > 1e250) {
            const double scale = 1e-250;
            f *= scale;
            fp *= scale;
            sum *= scale;
            jnu *= scale;
            jnum1 *= scale;
        }
    }
    sum += f; // k-1 == 0 term
    return {jnu / sum, jnum1 / sum};
}

inline double bessel_j(long nu, double x) { return bessel_j_with_neighbor(nu, x).first; }

inline double bessel_j_prime(long nu, double x) {
    if (x == 0.0) return nu == 1 ? 0.5 : 0.0;
    const auto [j, jm] = bessel_j_with_neighbor(nu, x);
    return jm - (double)nu / x * j;
}

// Both J_nu and J'_nu from one recurrence pass.
inline std::pair<double, double> bessel_j_pair(long nu, double x) {
    if (x == 0.0) return {nu == 0 ? 1.0 : 0.0, nu == 1 ? 0.5 : 0.0};
    const auto [j, jm] = bessel_j_with_neighbor(nu, x);
    return {j, jm - (double)nu / x * j};
}

} // namespace vortexsr
