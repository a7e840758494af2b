#ifndef WQED_VALIDATE_HPP
#define WQED_VALIDATE_HPP

#include <string>
#include <vector>

#include "wqed/lattice_oracle.hpp"

namespace wqed {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    // "<" means pass iff measured < threshold, ">" the opposite.
    char direction = '<';
};

struct ResidualCheckConfig {
    int n_param_sets = 100;
    int n_sample_points = 20;
    double tolerance = 1e-10;
    double sensitivity_floor = 1e-4;
    unsigned seed = 20240817;
};

struct FanoCheckConfig {
    int n_param_sets = 1000;
    double consistency_tol = 1e-12;
    double approx_tol = 0.1;
    unsigned seed = 911;
};

/// Appendix-state fidelity: the closed forms must satisfy their defining
/// equations, and the residual must react to a perturbed bound-state
/// amplitude.
std::vector<CheckResult> validate_residuals(const ResidualCheckConfig& cfg = {});

/// |chi|^2 against eta_t at coincident detectors, and the Fano
/// approximation in its validity regime.
std::vector<CheckResult> validate_fano(const FanoCheckConfig& cfg = {});

/// Lattice-oracle cross-validation: single-photon lineshape and the
/// resonant strong-nonlinearity eta_t value against closed forms.
std::vector<CheckResult> validate_oracle(const LatticeModel& model = {});

}  // namespace wqed

#endif
