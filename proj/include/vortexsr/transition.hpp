#pragma once

// Photon kinematics and exact transition matrix elements between Landau
// states, with polarization-resolved emission densities at fixed angle.
//
// Photon direction n = (0, sin th, cos th); circular basis e± built on
// e1 = x^ and e2 = (0, cos th, -sin th), with + right-handed.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "vortexsr/common.hpp"
#include "vortexsr/electron_state.hpp"
#include "vortexsr/special_functions.hpp"

namespace vortexsr {

enum class Polarization { Plus, Minus };

struct PhotonKinematics {
    double theta;
    double k;              // photon wavenumber
    double kz_final;       // k_z - k cos th
    double x;              // k^2 sin^2 th / (4 gamma)
    double eps;            // kinematic discriminant argument
    double beta_par_final; // (k_z - k cos th)/(K - k)
};

// Solves energy-momentum conservation for the photon wavenumber in the
// cancellation-free form
//   k = [4 gamma (n - n') / (K D)] / (1 + sqrt(1 - eps)),
//   eps = 4 gamma (n - n') sin^2 th / (K D)^2,  D = 1 - beta_par cos th,
// which stays exact at th = 0, pi. Returns nullopt when eps > 1 (harmonic
// not emittable at this angle).
inline std::optional<PhotonKinematics> photon_wavenumber(const ElectronState& initial,
                                                         long n_final, double theta,
                                                         const FieldConfig& cfg) {
    initial.validate();
    cfg.validate();
    if (n_final < 0 || n_final > initial.n)
        throw std::domain_error("photon_wavenumber: require 0 <= n' <= n");
    if (!(theta >= 0.0 && theta <= pi))
        throw std::domain_error("photon_wavenumber: require theta in [0, pi]");

    const double g = cfg.gamma();
    const double K = energy(initial, cfg);
    const double D = 1.0 - (initial.kz / K) * std::cos(theta);
    const long nu = initial.n - n_final;
    const double st = std::sin(theta);
    const double eps = 4.0 * g * (double)nu * st * st / (K * D * K * D);
    if (eps > 1.0) return std::nullopt;
    const double k = (4.0 * g * (double)nu / (K * D)) / (1.0 + std::sqrt(1.0 - eps));
    const double kzf = initial.kz - k * std::cos(theta);
    return PhotonKinematics{theta, k, kzf, k * k * st * st / (4.0 * g), eps,
                            kzf / (K - k)};
}

struct TransitionAmplitude {
    std::complex<double> a1, a2, a3;
    long n, s;
    int zeta;
    long n_final, s_final;
    int zeta_final;
    double theta;
};

// Final-state label; k'_z is fixed by the kinematics.
struct FinalState {
    long n;
    long s;
    int zeta;
};

// Matrix elements of the velocity operator between the two Landau states,
// in the (e1, e2 cos th - z^ sin th) decomposition used by the S± bilinears:
//   a1 =  i [P I_{n,n'-1}(x) - Q I_{n-1,n'}(x)] f
//   a2 =     [P I_{n,n'-1}(x) + Q I_{n-1,n'}(x)] f
//   a3 =     [C I_{n-1,n'-1}(x) - D I_{n,n'}(x)] f,   f = I_{s,s'}(x),
// with P = c'1 c4 + c'3 c2, Q = c1 c'4 + c3 c'2, C = c'1 c3 + c1 c'3,
// D = c2 c'4 + c'2 c4. Laguerre functions with a negative index vanish.
inline TransitionAmplitude matrix_elements(const ElectronState& initial,
                                           const FinalState& fin,
                                           const PhotonKinematics& kin,
                                           const FieldConfig& cfg) {
    if (fin.n < 0 || fin.s < 0)
        throw std::domain_error("matrix_elements: require n', s' >= 0");
    const SpinCoefficients c = spin_coefficients(initial, cfg);
    const ElectronState fst{fin.n, fin.s, kin.kz_final, fin.zeta};
    const SpinCoefficients cp = spin_coefficients(fst, cfg);

    const double P = cp.c1 * c.c4 + cp.c3 * c.c2;
    const double Q = c.c1 * cp.c4 + c.c3 * cp.c2;
    const double C = cp.c1 * c.c3 + c.c1 * cp.c3;
    const double D = c.c2 * cp.c4 + cp.c2 * c.c4;

    const double x = kin.x;
    const double f = laguerre_function(initial.s, fin.s, x);
    const double Ia = laguerre_function(initial.n, fin.n - 1, x);
    const double Ib = laguerre_function(initial.n - 1, fin.n, x);
    const double Ic = laguerre_function(initial.n - 1, fin.n - 1, x);
    const double Id = laguerre_function(initial.n, fin.n, x);

    TransitionAmplitude amp;
    amp.a1 = std::complex<double>(0.0, (P * Ia - Q * Ib) * f);
    amp.a2 = std::complex<double>((P * Ia + Q * Ib) * f, 0.0);
    amp.a3 = std::complex<double>((C * Ic - D * Id) * f, 0.0);
    amp.n = initial.n;
    amp.s = initial.s;
    amp.zeta = initial.zeta;
    amp.n_final = fin.n;
    amp.s_final = fin.s;
    amp.zeta_final = fin.zeta;
    amp.theta = kin.theta;
    return amp;
}

// S± = 1/2 [ |a1|^2 + |a2 cos th - a3 sin th|^2 ∓ i S_par ],
// S_par = (a1* a2 - a2* a1) cos th - (a1* a3 - a3* a1) sin th.
inline std::pair<double, double> polarization_matrix(const TransitionAmplitude& amp,
                                                     double theta) {
    const std::complex<double> at = amp.a2 * std::cos(theta) - amp.a3 * std::sin(theta);
    const std::complex<double> spar =
        (std::conj(amp.a1) * amp.a2 - std::conj(amp.a2) * amp.a1) * std::cos(theta) -
        (std::conj(amp.a1) * amp.a3 - std::conj(amp.a3) * amp.a1) * std::sin(theta);
    const double base = std::norm(amp.a1) + std::norm(at);
    const double circ = (std::complex<double>(0.0, 1.0) * spar).real(); // i*spar is real
    double sp = 0.5 * (base - circ);
    double sm = 0.5 * (base + circ);
    if (sp < 0.0 && sp > -1e-18 * base) sp = 0.0; // roundoff guard
    if (sm < 0.0 && sm > -1e-18 * base) sm = 0.0;
    return {sp, sm};
}

// Differential emission probability per unit time per unit theta for one
// (n', s', zeta') channel and one circular polarization:
//   (e0^2 / hbar) S± k sin th / (1 - beta'_par cos th).
inline double emission_density(const ElectronState& initial, const FinalState& fin,
                               double theta, Polarization pol, const FieldConfig& cfg) {
    const auto kin = photon_wavenumber(initial, fin.n, theta, cfg);
    if (!kin || kin->k == 0.0) return 0.0;
    const auto amp = matrix_elements(initial, fin, *kin, cfg);
    const auto [sp, sm] = polarization_matrix(amp, theta);
    const double s = pol == Polarization::Plus ? sp : sm;
    return e0_sq * s * kin->k * std::sin(theta) /
           (1.0 - kin->beta_par_final * std::cos(theta));
}

} // namespace vortexsr
