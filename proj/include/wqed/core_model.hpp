#ifndef WQED_CORE_MODEL_HPP
#define WQED_CORE_MODEL_HPP

#include <cmath>
#include <complex>

#include "wqed/errors.hpp"

namespace wqed {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Physical constants of the waveguide-cavity system.
///
/// gamma is the decay rate into the waveguide, Gamma = Vbar^2 / v_c with
/// Vbar = sqrt(2) V the even-mode coupling. kappa is the intrinsic cavity
/// loss, u the Kerr interaction strength. Frequencies are in whatever unit
/// the caller picks; the default convention is v_c = 1, kappa = 1.
struct SystemParams {
    double gamma = 1.0;
    double kappa = 1.0;
    double u = 0.0;
    double omega_a = 0.0;
    double v_c = 1.0;

    void validate() const {
        if (gamma < 0.0) throw std::invalid_argument("SystemParams: gamma must be >= 0");
        if (kappa < 0.0) throw std::invalid_argument("SystemParams: kappa must be >= 0");
        if (!(v_c > 0.0)) throw std::invalid_argument("SystemParams: v_c must be > 0");
    }

    /// Even-mode coupling Vbar with Gamma = Vbar^2 / v_c.
    double coupling_vbar() const { return std::sqrt(gamma * v_c); }
};

/// Incoming photon pair. delta1 = v_c k1 - omega/2, delta_a = omega_a - omega/2.
/// The second photon's detuning is always -delta1; omega is a reference total
/// energy that only enters as a center-of-mass phase.
struct TwoPhotonInput {
    double delta1 = 0.0;
    double delta_a = 0.0;
    double omega = 0.0;

    double delta2() const { return -delta1; }
};

/// Detector position pair with center-of-mass and relative coordinates.
struct CoordinatePair {
    double x1 = 0.0;
    double x2 = 0.0;

    double center() const { return 0.5 * (x1 + x2); }
    double relative() const { return x2 - x1; }
};

struct SinglePhotonAmplitudes {
    complex t_bar;
    complex r_bar;
};

/// Single-photon transmission/reflection at detuning = v_c k - omega_a.
/// t_bar = (d + i kappa/2) / (d + i (kappa+Gamma)/2), r_bar = t_bar - 1.
SinglePhotonAmplitudes single_photon_amplitudes(double detuning, const SystemParams& params);

/// Symmetrized incoming two-photon wavefunction phi_k(x1, x2); equals
/// exp(i omega x_c / v_c) cos(delta1 x / v_c) / (sqrt(2) pi).
complex incoming_wavefunction(const TwoPhotonInput& input, const CoordinatePair& coords,
                              double v_c);

/// Gamma = Vbar^2 / v_c = 2 V^2 / v_c for single-channel coupling V.
double gamma_from_coupling(double coupling_v, double v_c);

}  // namespace wqed

#endif
