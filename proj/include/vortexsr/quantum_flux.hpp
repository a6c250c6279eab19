#pragma once

// Sums the per-transition densities of transition.hpp into angular-momentum
// flux and radiated-power spectra: over radial channels s', spins, harmonics
// nu = n - n', and angle.
//
// Per channel, the angular-momentum weight is hbar (l - l') with
// l - l' = nu + (s' - s), and the power weight is hbar c k.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "vortexsr/common.hpp"
#include "vortexsr/electron_state.hpp"
#include "vortexsr/flux_report.hpp"
#include "vortexsr/parallel.hpp"
#include "vortexsr/quadrature.hpp"
#include "vortexsr/transition.hpp"

namespace vortexsr {

enum class SpinMode { AverageInitial, FixedInitial };

struct FluxOptions {
    long harmonic_max = 0; // 0: auto from the critical-harmonic scale
    SpinMode spin_mode = SpinMode::AverageInitial;
    double tol = 1e-10;
};

inline long default_harmonic_max(double beta_perp) {
    const double scale = 10.0 / std::pow(1.0 - std::min(beta_perp, 0.999), 3.0);
    return std::min<long>((long)std::max(20.0, std::ceil(scale)), 100000);
}

// Per-theta densities for one harmonic, summed over s' and spins.
struct HarmonicDensity {
    double emission_plus = 0.0, emission_minus = 0.0; // probability / (time * theta)
    double L_plus = 0.0, L_minus = 0.0;               // hbar (l-l') weighted
    double power_plus = 0.0, power_minus = 0.0;       // hbar c k weighted
    bool forbidden = false;                           // eps > 1 at this angle
};

// Evaluates the (nu, theta) summand of the flux sums. Initial spin is either
// averaged over zeta = ±1 or fixed to initial.zeta; final spin is always
// summed. The s' sum starts at s' = s and walks outward until the Laguerre
// factor I_{s,s'}(x)^2 stays below tol times its running maximum for three
// consecutive s' (it decays monotonically beyond the oscillatory core).
inline HarmonicDensity harmonic_density(const ElectronState& initial, long nu,
                                        double theta, const FieldConfig& cfg,
                                        SpinMode mode = SpinMode::AverageInitial,
                                        double tol = 1e-10) {
    HarmonicDensity out;
    const long n_final = initial.n - nu;
    if (nu <= 0 || n_final < 0) return out;

    const auto kin0 = photon_wavenumber(initial, n_final, theta, cfg);
    if (!kin0) {
        out.forbidden = true;
        return out;
    }

    const double st = std::sin(theta);
    const double ct = std::cos(theta);

    int zeta_lo = initial.zeta, zeta_hi = initial.zeta;
    double spin_weight = 1.0;
    if (mode == SpinMode::AverageInitial) {
        zeta_lo = -1;
        zeta_hi = 1;
        spin_weight = 0.5;
    }

    // Shared kinematics: k depends only on (n, n', k_z, theta), not on spins
    // or s'. (The final-state energy K' = sqrt(1 + k'_z^2 + 2 b n') is
    // independent of s'.)
    const double k = kin0->k;
    const double x = kin0->x;
    const double meas = k * st / (1.0 - kin0->beta_par_final * ct);

    const auto add_channel = [&](long s_final) -> double {
        const double f = laguerre_function(initial.s, s_final, x);
        const double f2 = f * f;
        const double l_weight = (double)(nu + (s_final - initial.s));
        for (int zeta = zeta_lo; zeta <= zeta_hi; zeta += 2) {
            ElectronState ini = initial;
            ini.zeta = zeta;
            for (int zf = -1; zf <= 1; zf += 2) {
                const auto amp = matrix_elements(ini, FinalState{n_final, s_final, zf},
                                                 *kin0, cfg);
                const auto [sp, sm] = polarization_matrix(amp, theta);
                const double wp = spin_weight * e0_sq * sp * meas;
                const double wm = spin_weight * e0_sq * sm * meas;
                out.emission_plus += wp;
                out.emission_minus += wm;
                out.L_plus += l_weight * wp;
                out.L_minus += l_weight * wm;
                out.power_plus += k * wp;
                out.power_minus += k * wm;
            }
        }
        return f2;
    };

    double fmax = 0.0;
    int small_run = 0;
    for (long sf = initial.s; sf <= initial.s + 100000; ++sf) {
        const double f2 = add_channel(sf);
        fmax = std::max(fmax, f2);
        small_run = (f2 < tol * fmax) ? small_run + 1 : 0;
        if (small_run >= 3) break;
    }
    fmax = fmax > 0.0 ? fmax : 1.0;
    small_run = 0;
    for (long sf = initial.s - 1; sf >= 0; --sf) {
        const double f2 = add_channel(sf);
        small_run = (f2 < tol * fmax) ? small_run + 1 : 0;
        if (small_run >= 3) break;
    }
    return out;
}

namespace detail {

enum class FluxWeight { AngularMomentum, Power, Emission };

template <FluxWeight W>
inline FluxReport flux_sum(const ElectronState& initial, const FieldConfig& cfg,
                           const FluxOptions& opts) {
    initial.validate();
    cfg.validate();
    FluxReport rep;
    if (initial.n == 0) {
        rep.converged = true;
        return rep;
    }
    const auto kin = kinematics(initial, cfg);
    const long nu_max = std::min<long>(
        initial.n,
        opts.harmonic_max > 0 ? opts.harmonic_max : default_harmonic_max(kin.beta_perp));

    const auto one = [&](long nu) {
        HarmonicFlux h{nu, 0.0, 0.0, 0.0};
        double ep = 0.0, em = 0.0;
        h.plus = integrate(
            [&](double th) {
                const auto d = harmonic_density(initial, nu, th, cfg, opts.spin_mode,
                                                opts.tol);
                if constexpr (W == FluxWeight::AngularMomentum) return d.L_plus;
                else if constexpr (W == FluxWeight::Power) return d.power_plus;
                else return d.emission_plus;
            },
            0.0, pi, opts.tol, &ep);
        h.minus = integrate(
            [&](double th) {
                const auto d = harmonic_density(initial, nu, th, cfg, opts.spin_mode,
                                                opts.tol);
                if constexpr (W == FluxWeight::AngularMomentum) return d.L_minus;
                else if constexpr (W == FluxWeight::Power) return d.power_minus;
                else return d.emission_minus;
            },
            0.0, pi, opts.tol, &em);
        h.quad_error = ep + em;
        return h;
    };

    // Harmonics are independent; compute them in parallel blocks and reduce
    // in index order so the sums are bit-reproducible.
    const unsigned block = std::max(1u, thread_count());
    int small_run = 0;
    long nu = 1;
    double running = 0.0;
    while (nu <= nu_max && small_run < 3) {
        const long hi = std::min(nu_max, nu + (long)block - 1);
        std::vector<HarmonicFlux> chunk(hi - nu + 1);
        parallel_for(chunk.size(), [&](std::size_t i) { chunk[i] = one(nu + (long)i); });
        for (auto& h : chunk) {
            rep.total_plus += h.plus;
            rep.total_minus += h.minus;
            running = std::fabs(rep.total_plus + rep.total_minus);
            const double contrib = std::fabs(h.plus + h.minus);
            rep.tail_estimate = running > 0.0 ? contrib / running : 0.0;
            small_run = (contrib <= opts.tol * std::max(running, 1e-300)) ? small_run + 1 : 0;
            rep.harmonics.push_back(h);
            if (small_run >= 3) break;
        }
        nu = hi + 1;
    }
    rep.harmonics_used = (long)rep.harmonics.size();
    rep.converged = small_run >= 3 || rep.harmonics_used == initial.n;
    if (!rep.converged)
        throw ConvergenceError(
            "quantum flux sum: harmonic series not converged after " +
                std::to_string(rep.harmonics_used) + " harmonics (tail estimate " +
                std::to_string(rep.tail_estimate) + ")",
            rep.tail_estimate);
    return rep;
}

} // namespace detail

// dL_z/dt = e0^2 Sum_{m'} (l - l') Int S± k sin th dth / (1 - beta'_par cos th)
inline FluxReport angular_momentum_rate(const ElectronState& initial,
                                        const FieldConfig& cfg,
                                        const FluxOptions& opts = {}) {
    return detail::flux_sum<detail::FluxWeight::AngularMomentum>(initial, cfg, opts);
}

// W = c e0^2 Sum_{m'} Int S± k^2 sin th dth / (1 - beta'_par cos th)
inline FluxReport radiated_power(const ElectronState& initial, const FieldConfig& cfg,
                                 const FluxOptions& opts = {}) {
    return detail::flux_sum<detail::FluxWeight::Power>(initial, cfg, opts);
}

// Total emission probability per unit time.
inline FluxReport emission_rate(const ElectronState& initial, const FieldConfig& cfg,
                                const FluxOptions& opts = {}) {
    return detail::flux_sum<detail::FluxWeight::Emission>(initial, cfg, opts);
}

// --- materialized spectra -------------------------------------------------

struct SpectrumRow {
    double theta;
    long nu;
    Polarization pol;
    double emission_density; // per-theta density; per-solid-angle limit at poles
    double L_flux_density;
    double power_density;
    bool forbidden;
    bool pole;
};

struct AngularSpectrum {
    std::vector<double> theta_grid;
    std::vector<SpectrumRow> rows;
};

// Per-solid-angle pole limit: only the (n' = n-1, s' = s) channel survives at
// th = 0, pi, so evaluate just that channel and divide the measure by
// 2 pi sin th analytically.
inline void append_pole_rows(AngularSpectrum& spec, const ElectronState& initial,
                             double theta, const FieldConfig& cfg, SpinMode mode) {
    const long n_final = initial.n - 1;
    SpectrumRow base{theta, 1, Polarization::Plus, 0.0, 0.0, 0.0, false, true};
    if (n_final < 0) {
        spec.rows.push_back(base);
        base.pol = Polarization::Minus;
        spec.rows.push_back(base);
        return;
    }
    const auto kin = photon_wavenumber(initial, n_final, theta, cfg);
    const double ct = std::cos(theta);
    double sp_tot = 0.0, sm_tot = 0.0;
    int zeta_lo = initial.zeta, zeta_hi = initial.zeta;
    double w = 1.0;
    if (mode == SpinMode::AverageInitial) {
        zeta_lo = -1;
        zeta_hi = 1;
        w = 0.5;
    }
    for (int zeta = zeta_lo; zeta <= zeta_hi; zeta += 2) {
        ElectronState ini = initial;
        ini.zeta = zeta;
        for (int zf = -1; zf <= 1; zf += 2) {
            const auto amp =
                matrix_elements(ini, FinalState{n_final, initial.s, zf}, *kin, cfg);
            const auto [sp, sm] = polarization_matrix(amp, theta);
            sp_tot += w * sp;
            sm_tot += w * sm;
        }
    }
    const double meas = e0_sq * kin->k / (2.0 * pi * (1.0 - kin->beta_par_final * ct));
    for (const auto pol : {Polarization::Plus, Polarization::Minus}) {
        const double s = pol == Polarization::Plus ? sp_tot : sm_tot;
        SpectrumRow row = base;
        row.pol = pol;
        row.emission_density = s * meas;
        row.L_flux_density = s * meas;          // l - l' = 1 exactly at the poles
        row.power_density = s * meas * kin->k;
        spec.rows.push_back(row);
    }
}

struct SpectrumOptions {
    std::vector<double> theta_grid; // interior angles in (0, pi)
    bool include_poles = false;
    long harmonic_max = 0;
    SpinMode spin_mode = SpinMode::AverageInitial;
    double tol = 1e-10;
};

inline AngularSpectrum spectrum_table(const ElectronState& initial, const FieldConfig& cfg,
                                      const SpectrumOptions& opts) {
    initial.validate();
    cfg.validate();
    AngularSpectrum spec;
    spec.theta_grid = opts.theta_grid;
    std::sort(spec.theta_grid.begin(), spec.theta_grid.end());
    if (initial.n == 0) return spec;

    const auto kin = kinematics(initial, cfg);
    const long nu_max = std::min<long>(
        initial.n,
        opts.harmonic_max > 0 ? opts.harmonic_max : default_harmonic_max(kin.beta_perp));

    if (opts.include_poles) append_pole_rows(spec, initial, 0.0, cfg, opts.spin_mode);

    std::vector<std::vector<SpectrumRow>> slices(spec.theta_grid.size());
    parallel_for(spec.theta_grid.size(), [&](std::size_t i) {
        const double th = spec.theta_grid[i];
        for (long nu = 1; nu <= nu_max; ++nu) {
            const auto d = harmonic_density(initial, nu, th, cfg, opts.spin_mode, opts.tol);
            slices[i].push_back({th, nu, Polarization::Plus, d.emission_plus, d.L_plus,
                                 d.power_plus, d.forbidden, false});
            slices[i].push_back({th, nu, Polarization::Minus, d.emission_minus, d.L_minus,
                                 d.power_minus, d.forbidden, false});
        }
    });
    for (auto& sl : slices)
        spec.rows.insert(spec.rows.end(), sl.begin(), sl.end());

    if (opts.include_poles) append_pole_rows(spec, initial, pi, cfg, opts.spin_mode);
    return spec;
}

} // namespace vortexsr
