#pragma once

// Classical-limit and classical-field results for a charge on a circular
// (optionally drifting) orbit:
//   * the hbar -> 0 limit of the polarized emission bilinears S±,
//   * the per-harmonic angular-momentum flux (quantum-limit form),
//   * the symmetrized-tensor flux density (r x Poynting),
//   * the canonical-tensor orbital/spin decomposition built from the
//     far-field Fourier components, and
//   * a per-harmonic power density for photon-number bookkeeping.
//
// Normalization note: the canonical closed forms here carry the per-harmonic
// time-average factor <X*Y> = 2 Re X_nu* Y_nu appropriate for a real field's
// Fourier series. With it, 2 pi Int (L_nu + S_nu) sin th dth reproduces the
// per-harmonic flux of the emission-side formulas exactly, the per-harmonic
// solid-angle integral of the symmetrized density matches the canonical
// total, and the spin density at th = 0 equals e0^2 w0 beta^2 / (4 pi c^2)
// for nu = 1 — the value demanded by "one hbar per photon" at the pole.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "vortexsr/common.hpp"
#include "vortexsr/flux_report.hpp"
#include "vortexsr/quadrature.hpp"
#include "vortexsr/special_functions.hpp"
#include "vortexsr/transition.hpp" // Polarization

namespace vortexsr {

struct ClassicalParams {
    double beta_perp = 0.5;
    double beta_par = 0.0;
    double omega0 = 1.0; // gyration frequency e0 H c / E
    long nu = 1;
    double theta = pi / 2;

    double doppler() const { return 1.0 - beta_par * std::cos(theta); }
    double xi() const { return nu * beta_perp * std::sin(theta) / doppler(); }

    void validate() const {
        if (!(beta_perp >= 0.0) || beta_perp * beta_perp + beta_par * beta_par >= 1.0)
            throw std::domain_error("ClassicalParams: require beta_perp^2 + beta_par^2 < 1");
        if (nu < 1) throw std::domain_error("ClassicalParams: require nu >= 1");
        if (!(theta >= 0.0 && theta <= pi))
            throw std::domain_error("ClassicalParams: require theta in [0, pi]");
        if (!(omega0 > 0.0)) throw std::domain_error("ClassicalParams: require omega0 > 0");
    }
};

// S± = 1/2 [ beta_perp J'_nu(xi) ± (cos th - beta_par)/sin th * J_nu(xi) ]^2,
// the hbar -> 0 limit of the spin-averaged/summed quantum bilinears. The
// sin th -> 0 pole is handled analytically: J_nu(xi)/sin th ->
// nu beta_perp / (2 (1 -+ beta_par)) delta_{nu,1} at th = 0 (pi).
inline double classical_S_pm(const ClassicalParams& p, Polarization pol) {
    p.validate();
    const double st = std::sin(p.theta);
    const double ct = std::cos(p.theta);
    const double sgn = pol == Polarization::Plus ? 1.0 : -1.0;
    if (st < 1e-12) {
        if (p.nu != 1) return 0.0;
        const double jp = 0.5;                              // J'_1(0)
        const double jratio = p.beta_perp / (2.0 * p.doppler()); // J_1(xi)/sin th
        const double bracket = p.beta_perp * jp + sgn * (ct - p.beta_par) * jratio;
        return 0.5 * bracket * bracket;
    }
    const auto [j, jp] = bessel_j_pair(p.nu, p.xi());
    const double bracket = p.beta_perp * jp + sgn * (ct - p.beta_par) / st * j;
    return 0.5 * bracket * bracket;
}

// Integrand of the per-harmonic angular-momentum flux:
//   e0^2 w0 nu^2 S±(th) sin th / (1 - beta_par cos th)^2 ,
// so that dL_z±/dt = Sum_nu Int_0^pi (this) dth.
inline double limit_flux_integrand(const ClassicalParams& p, Polarization pol) {
    const double st = std::sin(p.theta);
    const double D = p.doppler();
    return e0_sq * p.omega0 * (double)(p.nu * p.nu) * classical_S_pm(p, pol) * st / (D * D);
}

// Per-harmonic power density (same derivation path, weight nu w0 per photon
// instead of nu): P_nu = w0 * dL_nu/dt identically.
inline double power_density(const ClassicalParams& p) {
    return p.omega0 * (limit_flux_integrand(p, Polarization::Plus) +
                       limit_flux_integrand(p, Polarization::Minus));
}

namespace detail {

template <class TermFn>
FluxReport harmonic_series(long nu_max, double tol, TermFn&& term) {
    FluxReport rep;
    int small_run = 0;
    for (long nu = 1; nu <= nu_max; ++nu) {
        HarmonicFlux h = term(nu);
        rep.total_plus += h.plus;
        rep.total_minus += h.minus;
        rep.harmonics.push_back(h);
        const double running = std::fabs(rep.total());
        const double contrib = std::fabs(h.total());
        rep.tail_estimate = running > 0.0 ? contrib / running : 0.0;
        small_run = (contrib <= tol * std::max(running, 1e-300)) ? small_run + 1 : 0;
        if (small_run >= 3) break;
    }
    rep.harmonics_used = (long)rep.harmonics.size();
    rep.converged = small_run >= 3;
    if (!rep.converged)
        throw ConvergenceError("classical harmonic series not converged after " +
                                   std::to_string(rep.harmonics_used) +
                                   " harmonics (tail estimate " +
                                   std::to_string(rep.tail_estimate) + ")",
                               rep.tail_estimate);
    return rep;
}

} // namespace detail

// dL_z±/dt = (e0^2 w0 / 2c) Sum_nu nu^2 Int [beta_perp J' ± (cos-beta_par)/sin J]^2
//            sin th dth / (1 - beta_par cos th)^2
inline FluxReport classical_flux_total(double beta_perp, double beta_par, double omega0,
                                       long nu_max = 100000, double tol = 1e-12) {
    ClassicalParams probe{beta_perp, beta_par, omega0, 1, pi / 2};
    probe.validate();
    return detail::harmonic_series(nu_max, tol, [&](long nu) {
        HarmonicFlux h{nu, 0.0, 0.0, 0.0};
        double e1 = 0.0, e2 = 0.0;
        ClassicalParams p{beta_perp, beta_par, omega0, nu, 0.0};
        h.plus = integrate(
            [&](double th) {
                p.theta = th;
                return limit_flux_integrand(p, Polarization::Plus);
            },
            0.0, pi, tol, &e1);
        h.minus = integrate(
            [&](double th) {
                p.theta = th;
                return limit_flux_integrand(p, Polarization::Minus);
            },
            0.0, pi, tol, &e2);
        h.quad_error = e1 + e2;
        return h;
    });
}

// Symmetrized-tensor (r x Poynting) angular-momentum flux density per solid
// angle, circular orbit (beta_par = 0 only):
//   dL_z/dOm dt = (e0^2 w0 beta sin th / 2 pi c)
//                 Sum_nu nu { xi [J'^2 + cot^2 th J^2] + J J' } .
// The per-harmonic term is exposed; Sum over nu is the caller's loop.
inline double symmetrized_density(const ClassicalParams& p) {
    p.validate();
    if (p.beta_par != 0.0)
        throw std::invalid_argument("symmetrized_density: only beta_par = 0 is supported");
    const double st = std::sin(p.theta);
    if (st == 0.0) return 0.0; // vanishes at the poles (flux along n is zero)
    const double ct = std::cos(p.theta);
    const auto [j, jp] = bessel_j_pair(p.nu, p.xi());
    const double cot = ct / st;
    const double brace = p.xi() * (jp * jp + cot * cot * j * j) + j * jp;
    return e0_sq * p.omega0 * p.beta_perp * st / (2.0 * pi) * (double)p.nu * brace;
}

// Far-field Fourier components of the vector potential and electric field in
// the spherical basis (r^, th^, ph^), Coulomb gauge (A_r = 0), wave zone:
//   A_th = B cot th J_nu(xi)/r,  A_ph = i B beta J'_nu(xi)/r,
//   E_th = i B nu w0 cot th J_nu(xi)/(r c),  E_ph = -B nu w0 beta J'_nu(xi)/(r c),
//   B = -e0 exp(i(k r + nu ph - nu pi/2)),  k = nu w0 / c.
// (E_nu = i nu w0 A_nu / c, as required by E = -(1/c) dA/dt for the
// exp(-i nu w0 t) harmonic.)
struct FieldComponents {
    std::array<std::complex<double>, 3> A; // (r, theta, phi)
    std::array<std::complex<double>, 3> E;
};

inline FieldComponents field_fourier_components(const ClassicalParams& p, double r,
                                                double phi = 0.0) {
    p.validate();
    if (p.beta_par != 0.0)
        throw std::invalid_argument("field_fourier_components: only beta_par = 0 is supported");
    if (!(r > 0.0)) throw std::domain_error("field_fourier_components: require r > 0");
    const double st = std::sin(p.theta);
    const double ct = std::cos(p.theta);
    const double k = p.nu * p.omega0;
    const auto [j, jp] = bessel_j_pair(p.nu, p.xi());
    const std::complex<double> B =
        -std::sqrt(e0_sq) *
        std::exp(std::complex<double>(0.0, k * r + p.nu * phi - p.nu * pi / 2.0));
    const double cotj = st == 0.0 ? (p.nu == 1 ? p.beta_perp / 2.0 : 0.0) : ct / st * j;

    FieldComponents f;
    f.A[0] = 0.0;
    f.A[1] = B * cotj / r;
    f.A[2] = std::complex<double>(0.0, 1.0) * B * p.beta_perp * jp / r;
    const std::complex<double> iw(0.0, p.nu * p.omega0);
    for (int i = 0; i < 3; ++i) f.E[i] = iw * f.A[i];
    return f;
}

// Canonical ("orbital" + "spin") angular-momentum flux densities per solid
// angle, r^2-scaled wave-zone values, z-components:
//   L_nu_z = (e0^2 nu^2 w0 / 2 pi c^2) [beta^2 J'^2 + cot^2 th J^2
//             - (2 beta / nu)(cos^2 th / sin th) J' J]
//   S_nu_z = (e0^2 nu w0 beta / pi c^2) (cos^2 th / sin th) J' J .
// At the poles L_nu_z -> 0 and S_nu_z -> (e0^2 w0 beta^2 / 4 pi c^2) delta_{nu,1}.
struct CanonicalDensities {
    double orbital; // L_nu_z
    double spin;    // S_nu_z
    double total() const { return orbital + spin; }
};

inline CanonicalDensities canonical_densities(const ClassicalParams& p) {
    p.validate();
    if (p.beta_par != 0.0)
        throw std::invalid_argument("canonical_densities: only beta_par = 0 is supported");
    const double st = std::sin(p.theta);
    if (st < 1e-12) {
        const double spin =
            p.nu == 1 ? e0_sq * p.omega0 * p.beta_perp * p.beta_perp / (4.0 * pi) : 0.0;
        return {0.0, spin};
    }
    const double ct = std::cos(p.theta);
    const auto [j, jp] = bessel_j_pair(p.nu, p.xi());
    const double b = p.beta_perp;
    const double cross = (ct * ct / st) * jp * j;
    const double orbital = e0_sq * (double)(p.nu * p.nu) * p.omega0 / (2.0 * pi) *
                           (b * b * jp * jp + (ct / st) * (ct / st) * j * j -
                            2.0 * b / (double)p.nu * cross);
    const double spin = e0_sq * (double)p.nu * p.omega0 * b / pi * cross;
    return {orbital, spin};
}

// dL_z/dt = (e0^2 w0 / c) Sum_nu nu^2 Int [beta^2 J'^2 + cot^2 th J^2] sin th dth
// (the polarization-summed, beta_par = 0 total; equals the canonical
// densities integrated over solid angle).
inline FluxReport canonical_total(double beta, double omega0 = 1.0, long nu_max = 100000,
                                  double tol = 1e-12) {
    ClassicalParams probe{beta, 0.0, omega0, 1, pi / 2};
    probe.validate();
    return detail::harmonic_series(nu_max, tol, [&](long nu) {
        HarmonicFlux h{nu, 0.0, 0.0, 0.0};
        ClassicalParams p{beta, 0.0, probe.omega0, nu, 0.0};
        h.plus = integrate(
            [&](double th) {
                p.theta = th;
                const auto d = canonical_densities(p);
                return 2.0 * pi * d.total() * std::sin(th);
            },
            0.0, pi, tol, &h.quad_error);
        h.minus = 0.0; // canonical densities are polarization-summed
        return h;
    });
}

} // namespace vortexsr
