#ifndef WQED_APPENDIX_STATE_HPP
#define WQED_APPENDIX_STATE_HPP

#include <optional>
#include <vector>

#include "wqed/core_model.hpp"

namespace wqed {

/// One-sided limit selector for evaluations on a discontinuity axis.
/// Avg applies the theta(0) = 1/2 convention.
enum class Side { Minus, Avg, Plus };

/// Full even/odd-sector two-photon scattering state: closed-form
/// coefficients plus evaluators for the sector amplitudes. Immutable in
/// normal use; evaluators are pure.
struct ScatteringState {
    SystemParams params;
    TwoPhotonInput input;

    double k1 = 0.0;  // (omega/2 + delta1) / v_c
    double k2 = 0.0;
    double vbar = 0.0;

    complex t_k1, t_k2;       // even-mode single-photon transmission coefficients
    complex mu1, mu2;         // incoming-side photon-plus-cavity amplitudes
    complex eta1, eta2;       // mu * t_k
    complex rho1, rho2;       // mu / sqrt(2)
    complex xi, b;            // bound-state amplitudes
    complex lambda_minus;     // decay exponent of the xi e^{lambda_- x} term
    complex phi_aa;           // double cavity occupation amplitude

    complex phi_ee(double x1, double x2, Side s1 = Side::Avg, Side s2 = Side::Avg) const;
    /// Odd-mode photon at x1, even-mode photon at x2 (discontinuous in x2 only).
    complex phi_oe(double x1, double x2, Side s2 = Side::Avg) const;
    complex phi_oo(double x1, double x2) const;
    complex phi_ae(double x, Side s = Side::Avg) const;
    complex phi_oa(double x) const;

    // Analytic derivatives of the closed-form pieces; valid away from the
    // discontinuity axes (x_i = 0, and x1 = x2 for phi_ee).
    complex phi_ee_dsum(double x1, double x2) const;  // (d/dx1 + d/dx2) phi_ee
    complex phi_oe_dsum(double x1, double x2) const;
    complex phi_oo_dsum(double x1, double x2) const;
    complex phi_ae_deriv(double x) const;
    complex phi_oa_deriv(double x) const;
};

ScatteringState build_scattering_state(const TwoPhotonInput& input, const SystemParams& params);

/// Evaluates the six steady-state equations (on smooth segments, using
/// analytic derivatives) and the six discontinuity relations, each
/// normalized by its largest term magnitude. Returns the maximum
/// normalized residual over all equations and sample points.
/// Sample coordinates must avoid x = 0 and x1 = x2.
double residual_check(const ScatteringState& state, const std::vector<CoordinatePair>& sample_points);

struct ReconstructedChannels {
    complex tt;  // both transmitted, evaluated at (+|x1|, +|x2|)
    complex rr;  // both reflected, evaluated at (-|x1|, -|x2|)
    complex rt;  // reflected at -|x1|, transmitted at +|x2|
};

/// Recombines the even/odd sector amplitudes into right/left-mover channel
/// amplitudes at asymptotic coordinates. Both coordinates must lie strictly
/// on one side of the scatterer and at least 10 v_c / (kappa + gamma) away
/// from it; otherwise RegionError.
ReconstructedChannels reconstruct_outgoing(const ScatteringState& state,
                                           const CoordinatePair& coords);

}  // namespace wqed

#endif
