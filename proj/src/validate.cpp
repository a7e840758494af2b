#include "wqed/validate.hpp"

#include <cmath>
#include <random>

#include "wqed/appendix_state.hpp"
#include "wqed/fano.hpp"
#include "wqed/two_photon.hpp"

namespace wqed {

namespace {

std::vector<CoordinatePair> random_sample_points(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> pos(-5.0, 5.0);
    std::vector<CoordinatePair> points;
    while (static_cast<int>(points.size()) < n) {
        const double x1 = pos(rng);
        const double x2 = pos(rng);
        // Derivative stencils need smooth segments: stay off the axes and
        // off the diagonal.
        if (std::abs(x1) < 0.05 || std::abs(x2) < 0.05 || std::abs(x1 - x2) < 0.05) continue;
        points.push_back({x1, x2});
    }
    return points;
}

SystemParams random_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> kappa_d(0.1, 10.0);
    std::uniform_real_distribution<double> gamma_d(0.1, 200.0);
    std::uniform_real_distribution<double> u_d(0.0, 20.0);
    return {gamma_d(rng), kappa_d(rng), u_d(rng), 0.0, 1.0};
}

TwoPhotonInput random_input(std::mt19937& rng) {
    std::uniform_real_distribution<double> delta_d(-5.0, 5.0);
    std::uniform_real_distribution<double> omega_d(-3.0, 3.0);
    return {delta_d(rng), delta_d(rng), omega_d(rng)};
}

}  // namespace

std::vector<CheckResult> validate_residuals(const ResidualCheckConfig& cfg) {
    std::mt19937 rng(cfg.seed);
    double worst = 0.0;
    for (int s = 0; s < cfg.n_param_sets; ++s) {
        const SystemParams params = random_params(rng);
        const TwoPhotonInput input = random_input(rng);
        const auto state = build_scattering_state(input, params);
        const auto points = random_sample_points(rng, cfg.n_sample_points);
        worst = std::max(worst, residual_check(state, points));
    }

    // Sensitivity: a 1% error in B must be visible well above the pass bar.
    ScatteringState perturbed =
        build_scattering_state({0.0, 0.0, 0.0}, {1.0, 1.0, 10.0, 0.0, 1.0});
    perturbed.b *= 1.01;
    std::mt19937 rng2(cfg.seed + 1);
    const double perturbed_residual = residual_check(perturbed, random_sample_points(rng2, 20));

    return {
        {"residuals.max_normalized", worst < cfg.tolerance, worst, cfg.tolerance, '<'},
        {"residuals.b_perturbation_sensitivity", perturbed_residual > cfg.sensitivity_floor,
         perturbed_residual, cfg.sensitivity_floor, '>'},
    };
}

std::vector<CheckResult> validate_fano(const FanoCheckConfig& cfg) {
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> delta_a_d(-5.0, 5.0);

    double worst_consistency = 0.0;
    for (int s = 0; s < cfg.n_param_sets; ++s) {
        const SystemParams params = random_params(rng);
        const double delta_a = delta_a_d(rng);
        const double chi_sq = std::norm(chi(delta_a, params));
        const auto eta = correlation_eta({0.0, delta_a, 0.0}, {0.0, 0.0}, params);
        if (!eta.eta_t) continue;  // plane part vanished; chi has the same pole
        const double rel = std::abs(chi_sq - *eta.eta_t) / std::max(chi_sq, 1e-300);
        worst_consistency = std::max(worst_consistency, rel);
    }

    // Approximation quality in the validity regime gamma = 100 kappa,
    // u <= kappa / 50. Within 0.25 kappa of the blockade dip the relative
    // error of a near-vanishing quantity is dominated by a small shift of
    // the resonance position; that neighborhood is validated structurally
    // by the dip-position and dip-depth checks, so the pointwise relative
    // comparison here skips it.
    double worst_approx = 0.0;
    for (const double u : {0.005, 0.01, 0.02}) {
        const double dip = u * 100.0 / 2.0;  // u gamma / (2 kappa), kappa units
        for (int i = 0; i <= 100; ++i) {
            const double delta_a = 0.1 + (2.0 - 0.1) * i / 100.0;
            if (std::abs(delta_a - dip) < 0.25) continue;
            const SystemParams params{100.0, 1.0, u, 0.0, 1.0};
            const auto shape = fano_parameters(delta_a, params);
            const double exact = std::norm(shape.chi);
            const double approx = fano_eta_approx(shape);
            const double rel = std::abs(approx - exact) / std::max(exact, 1e-6);
            worst_approx = std::max(worst_approx, rel);
        }
    }

    return {
        {"fano.chi_eta_consistency", worst_consistency < cfg.consistency_tol, worst_consistency,
         cfg.consistency_tol, '<'},
        {"fano.approximation_error", worst_approx < cfg.approx_tol, worst_approx, cfg.approx_tol,
         '<'},
    };
}

std::vector<CheckResult> validate_oracle(const LatticeModel& base) {
    // Single-photon lineshape over detunings within +-2 kappa of resonance.
    const double kappa = base.kappa;
    const double gamma = base.gamma_eff();
    double worst_lineshape = 0.0;
    for (int i = 0; i <= 8; ++i) {
        const double delta = -2.0 * kappa + 4.0 * kappa * i / 8.0;
        LatticeModel m = base;
        m.u = 0.0;
        m.cavity_detuning = -delta;  // photon carrier sits at band center (energy 0)
        const complex t_lattice = steady_t_bar(m);
        const SystemParams continuum{gamma, kappa, 0.0, 0.0, 1.0};
        const complex t_exact = single_photon_amplitudes(delta, continuum).t_bar;
        const double rel = std::abs(std::norm(t_lattice) - std::norm(t_exact)) /
                           std::max(std::norm(t_exact), 1e-12);
        worst_lineshape = std::max(worst_lineshape, rel);
    }

    // Resonant eta_t for gamma_eff = kappa, u = 10 kappa against 1/101.
    LatticeModel strong = base;
    strong.u = 10.0 * kappa;
    strong.cavity_detuning = 0.0;
    const OracleResult result = run_two_photon_oracle(strong);
    const SystemParams continuum{gamma, kappa, strong.u, 0.0, 1.0};
    const auto eta_exact = correlation_eta({0.0, 0.0, 0.0}, {0.0, 0.0}, continuum);
    const double eta_rel =
        std::abs(result.eta_t_estimate - *eta_exact.eta_t) / *eta_exact.eta_t;

    return {
        {"oracle.single_photon_lineshape", worst_lineshape < 0.05, worst_lineshape, 0.05, '<'},
        {"oracle.eta_t_relative_error", eta_rel < 0.10, eta_rel, 0.10, '<'},
    };
}

}  // namespace wqed
