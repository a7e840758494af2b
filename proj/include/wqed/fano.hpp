#ifndef WQED_FANO_HPP
#define WQED_FANO_HPP

#include "wqed/core_model.hpp"

namespace wqed {

/// Fano lineshape parameters at one cavity detuning. chi is the exact
/// interference factor; q and epsilon are the approximate asymmetry and
/// reduced detuning, undefined at delta_a = 0 or 2 delta_a^2 = kappa gamma.
struct FanoShape {
    double q;
    double epsilon;
    complex chi;
};

struct OptimalConditions {
    double delta_a_star;
    double u_star;
};

struct SearchRange {
    double min;
    double max;
};

struct OptimumResult {
    double delta_a;
    double u;
    double eta;
};

/// Exact interference factor for coincident detectors (x1 = x2) and
/// delta1 = delta2 = 0:
///   chi = 1 + (gamma/2)^2 u / [(delta_a + u - i(kappa+gamma)/2)(delta_a - i kappa/2)^2].
/// |chi|^2 equals eta_t at those coordinates.
complex chi(double delta_a, const SystemParams& params);

FanoShape fano_parameters(double delta_a, const SystemParams& params);

/// Approximate lineshape (epsilon^2 + (1+q)^2) / (1 + epsilon^2).
double fano_eta_approx(const FanoShape& shape);

/// Closed-form optimum for strong transmitted-photon repulsion:
/// delta_a = kappa/2, u = kappa^2/gamma.
OptimalConditions optimal_conditions(const SystemParams& params);

/// Estimated minimum eta_t at the optimum, (u/kappa)^2.
double eta_min_estimate(const SystemParams& params);

/// Deterministic grid scan plus golden-section refinement of |chi|^2 over
/// (delta_a, u). A degenerate range (min == max) pins that axis. Throws
/// NoMinimumInRange when the minimum sits on the range boundary.
OptimumResult numeric_optimum_search(const SystemParams& params, SearchRange delta_a_range,
                                     SearchRange u_range, double tolerance);

}  // namespace wqed

#endif
