#pragma once

// Landau-level electron in a uniform magnetic field: quantum numbers,
// energies, kinematic parameters, spin-polarization coefficients.

#include <cmath>
#include <stdexcept>
#include <string>

#include "vortexsr/common.hpp"

namespace vortexsr {

enum class UnitSystem { Natural, Gaussian, SI };

// Field strength as the ratio b = H/H_c of the critical (Schwinger) field
// H_c = m^2 c^3 / (e0 hbar). In natural units the magnetic length scale is
// gamma = e0 H / (2 c hbar) = b/2 and k0 = mc/hbar = 1.
struct FieldConfig {
    double b = 1e-3;
    UnitSystem units = UnitSystem::Natural;

    static constexpr double k0 = 1.0;
    double gamma() const { return 0.5 * b; }

    // Conversion helpers for output; internal computation never leaves
    // natural units.
    double field_tesla() const { return b * 4.41400521e9; }
    double field_gauss() const { return b * 4.41400521e13; }

    void validate() const {
        if (!(b > 0.0) || !std::isfinite(b))
            throw std::domain_error("FieldConfig: require b > 0, got " + std::to_string(b));
    }
};

// (n, s, k_z, zeta); the orbital quantum number is l = n - s.
struct ElectronState {
    long n = 0;
    long s = 0;
    double kz = 0.0;
    int zeta = 1;

    long l() const { return n - s; }

    void validate() const {
        if (n < 0 || s < 0)
            throw std::domain_error("ElectronState: require n, s >= 0");
        if (zeta != 1 && zeta != -1)
            throw std::domain_error("ElectronState: zeta must be +1 or -1");
        if (!std::isfinite(kz))
            throw std::domain_error("ElectronState: k_z must be finite");
    }
};

// E = sqrt(1 + k_z^2 + 4 gamma n) in units of mc^2; note 4*gamma = 2b.
inline double energy(const ElectronState& st, const FieldConfig& cfg) {
    st.validate();
    cfg.validate();
    return std::sqrt(1.0 + st.kz * st.kz + 2.0 * cfg.b * st.n);
}

struct Kinematics {
    double K;          // E / (c hbar), equals E in natural units
    double beta_perp;  // 2 sqrt(gamma n) / K
    double beta_par;   // k_z / K
};

inline Kinematics kinematics(const ElectronState& st, const FieldConfig& cfg) {
    const double K = energy(st, cfg);
    return {K, 2.0 * std::sqrt(cfg.gamma() * (double)st.n) / K, st.kz / K};
}

// Spin structure of the bispinor amplitude. The c_i are built from
//   A+ = sqrt(1 + k_z/K),        A- = zeta sqrt(1 - k_z/K),
//   B+ = sqrt(1 + zeta k0/K0),   B- = zeta sqrt(1 - zeta k0/K0),
// with K0 = sqrt(K^2 - k_z^2) >= k0. At the ground level K0 = k0 exactly and
// one spin orientation carries zero weight.
struct SpinCoefficients {
    double c1, c2, c3, c4;
    double Ap, Am, Bp, Bm;
    double K, K0;
};

inline SpinCoefficients spin_coefficients(const ElectronState& st, const FieldConfig& cfg) {
    const double K = energy(st, cfg);
    const double K0sq = K * K - st.kz * st.kz; // = 1 + 2 b n >= 1 exactly
    if (K0sq < FieldConfig::k0 * FieldConfig::k0 * (1.0 - 1e-12))
        throw std::domain_error("spin_coefficients: K0 < k0 (inconsistent state)");
    const double K0 = std::sqrt(K0sq);
    const double z = st.zeta;

    const double Ap = std::sqrt(1.0 + st.kz / K);
    const double Am = z * std::sqrt(std::max(1.0 - st.kz / K, 0.0));
    // clamp: at n = 0, 1 - zeta*k0/K0 is an exact zero up to roundoff
    const double Bp = std::sqrt(std::max(1.0 + z * FieldConfig::k0 / K0, 0.0));
    const double Bm = z * std::sqrt(std::max(1.0 - z * FieldConfig::k0 / K0, 0.0));

    const double f = 1.0 / (2.0 * std::sqrt(2.0));
    return {f * Bp * (Ap + Am), f * Bm * (Am - Ap),
            f * Bp * (Ap - Am), f * Bm * (Ap + Am),
            Ap, Am, Bp, Bm, K, K0};
}

} // namespace vortexsr
