#include "wqed/appendix_state.hpp"

#include <algorithm>
#include <cmath>

#include "wqed/two_photon.hpp"

namespace wqed {

namespace {

const complex kI(0.0, 1.0);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

double step_weight(double x, Side s) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return 0.0;
    switch (s) {
        case Side::Minus: return 0.0;
        case Side::Plus: return 1.0;
        default: return 0.5;
    }
}

}  // namespace

// Even single-photon mode: (theta(-x) + t_k theta(x)) e^{ikx} / sqrt(2 pi).
static complex phi_even_mode(double x, Side s, double k, complex t_k) {
    const double w = step_weight(x, s);
    return kInvSqrt2Pi * ((1.0 - w) + t_k * w) * std::exp(kI * k * x);
}

static complex phi_odd_mode(double x, double k) {
    return kInvSqrt2Pi * std::exp(kI * k * x);
}

complex ScatteringState::phi_ee(double x1, double x2, Side s1, Side s2) const {
    const complex plane =
        (phi_even_mode(x1, s1, k1, t_k1) * phi_even_mode(x2, s2, k2, t_k2) +
         phi_even_mode(x2, s2, k1, t_k1) * phi_even_mode(x1, s1, k2, t_k2)) /
        std::sqrt(2.0);

    const double v = params.v_c;
    const double xc = 0.5 * (x1 + x2);
    const complex com_phase = std::exp(kI * input.omega * xc / v);
    // Relative-coordinate exponent i(omega - 2 omega_a) - (kappa + gamma),
    // with omega_a = delta_a + omega/2.
    const complex rel(-(params.kappa + params.gamma), -2.0 * input.delta_a);

    const double w_rel = step_weight(x2 - x1, Side::Avg);
    const double w1 = step_weight(x1, s1);
    const double w2 = step_weight(x2, s2);
    const complex bound =
        b * com_phase *
        (w_rel * w1 * std::exp(rel * (x2 - x1) / (2.0 * v)) +
         (1.0 - w_rel) * w2 * std::exp(rel * (x1 - x2) / (2.0 * v)));
    return plane + bound;
}

complex ScatteringState::phi_oe(double x1, double x2, Side s2) const {
    return (phi_odd_mode(x1, k1) * phi_even_mode(x2, s2, k2, t_k2) +
            phi_even_mode(x2, s2, k1, t_k1) * phi_odd_mode(x1, k2)) /
           std::sqrt(2.0);
}

complex ScatteringState::phi_oo(double x1, double x2) const {
    return (phi_odd_mode(x1, k1) * phi_odd_mode(x2, k2) +
            phi_odd_mode(x2, k1) * phi_odd_mode(x1, k2)) /
           std::sqrt(2.0);
}

complex ScatteringState::phi_ae(double x, Side s) const {
    const double w = step_weight(x, s);
    const complex incoming = mu1 * std::exp(kI * k1 * x) + mu2 * std::exp(kI * k2 * x);
    const complex outgoing = eta1 * std::exp(kI * k1 * x) + eta2 * std::exp(kI * k2 * x) +
                             xi * std::exp(lambda_minus * x);
    return (1.0 - w) * incoming + w * outgoing;
}

complex ScatteringState::phi_oa(double x) const {
    return rho1 * std::exp(kI * k1 * x) + rho2 * std::exp(kI * k2 * x);
}

complex ScatteringState::phi_ee_dsum(double x1, double x2) const {
    const complex ik_sum = kI * (k1 + k2);
    const complex plane =
        (phi_even_mode(x1, Side::Avg, k1, t_k1) * phi_even_mode(x2, Side::Avg, k2, t_k2) +
         phi_even_mode(x2, Side::Avg, k1, t_k1) * phi_even_mode(x1, Side::Avg, k2, t_k2)) /
        std::sqrt(2.0);

    // The bound term's relative-coordinate factor is annihilated by
    // d/dx1 + d/dx2; only the center-of-mass phase i omega / v_c survives.
    const complex bound = phi_ee(x1, x2) - plane;
    return ik_sum * plane + (kI * input.omega / params.v_c) * bound;
}

complex ScatteringState::phi_oe_dsum(double x1, double x2) const {
    return kI * (k1 + k2) * phi_oe(x1, x2);
}

complex ScatteringState::phi_oo_dsum(double x1, double x2) const {
    return kI * (k1 + k2) * phi_oo(x1, x2);
}

complex ScatteringState::phi_ae_deriv(double x) const {
    const double w = step_weight(x, Side::Avg);
    const complex incoming =
        kI * k1 * mu1 * std::exp(kI * k1 * x) + kI * k2 * mu2 * std::exp(kI * k2 * x);
    const complex outgoing = kI * k1 * eta1 * std::exp(kI * k1 * x) +
                             kI * k2 * eta2 * std::exp(kI * k2 * x) +
                             lambda_minus * xi * std::exp(lambda_minus * x);
    return (1.0 - w) * incoming + w * outgoing;
}

complex ScatteringState::phi_oa_deriv(double x) const {
    return kI * k1 * rho1 * std::exp(kI * k1 * x) + kI * k2 * rho2 * std::exp(kI * k2 * x);
}

ScatteringState build_scattering_state(const TwoPhotonInput& input, const SystemParams& params) {
    params.validate();
    if (!(params.kappa + params.gamma > 0.0)) {
        throw PoleError("build_scattering_state: kappa + gamma must be > 0");
    }

    ScatteringState st;
    st.params = params;
    st.input = input;
    st.vbar = params.coupling_vbar();
    st.k1 = (0.5 * input.omega + input.delta1) / params.v_c;
    st.k2 = (0.5 * input.omega + input.delta2()) / params.v_c;

    const double half_width = 0.5 * (params.kappa + params.gamma);
    const complex den1(input.delta1 - input.delta_a, half_width);
    const complex den2(input.delta2() - input.delta_a, half_width);
    st.t_k1 = complex(input.delta1 - input.delta_a, 0.5 * (params.kappa - params.gamma)) / den1;
    st.t_k2 = complex(input.delta2() - input.delta_a, 0.5 * (params.kappa - params.gamma)) / den2;

    const auto coeff = bound_state_coefficient(input, params);
    st.mu1 = coeff.mu1;
    st.mu2 = coeff.mu2;
    st.xi = coeff.xi;
    st.b = coeff.b;
    st.eta1 = st.mu1 * st.t_k1;
    st.eta2 = st.mu2 * st.t_k2;
    st.rho1 = st.mu1 / std::sqrt(2.0);
    st.rho2 = st.mu2 / std::sqrt(2.0);

    const complex cavity_den(input.delta_a + params.u, -half_width);
    st.phi_aa = -(st.vbar / std::sqrt(2.0)) * (st.mu1 + st.mu2) / cavity_den;

    // omega - omega_a = omega/2 - delta_a; the unique exponent for which
    // e^{lambda_- x} solves the outgoing photon-plus-cavity equation and
    // decays for x > 0.
    st.lambda_minus =
        complex(-half_width, 0.5 * input.omega - input.delta_a) / params.v_c;
    return st;
}

namespace {

struct ResidualAccumulator {
    double max_normalized = 0.0;

    void add(std::initializer_list<complex> terms) {
        complex sum(0.0, 0.0);
        double scale = 0.0;
        for (const complex& t : terms) {
            sum += t;
            scale = std::max(scale, std::abs(t));
        }
        if (scale == 0.0) scale = 1.0;
        max_normalized = std::max(max_normalized, std::abs(sum) / scale);
    }
};

}  // namespace

double residual_check(const ScatteringState& st,
                      const std::vector<CoordinatePair>& sample_points) {
    const SystemParams& p = st.params;
    const TwoPhotonInput& in = st.input;
    const double v = p.v_c;
    const double omega_a = in.delta_a + 0.5 * in.omega;
    const complex cavity_term(omega_a - in.omega, -0.5 * p.kappa);
    const double vbar = st.vbar;

    ResidualAccumulator acc;

    // Equations and jumps that do not depend on the sample point.
    acc.add({complex(2.0 * omega_a - in.omega + 2.0 * p.u, -p.kappa) * st.phi_aa,
             std::sqrt(2.0) * vbar * st.phi_ae(0.0)});
    acc.add({st.phi_ae(0.0, Side::Plus), -st.phi_ae(0.0, Side::Minus),
             -std::sqrt(2.0) * vbar / (kI * v) * st.phi_aa});
    // phi_oa is continuous at 0; both one-sided limits equal the closed form there.
    acc.add({st.phi_oa(0.0), -st.phi_oa(0.0)});

    for (const CoordinatePair& c : sample_points) {
        const double x1 = c.x1;
        const double x2 = c.x2;

        // Two-photon waveguide equations off the delta-function axes.
        acc.add({-kI * v * st.phi_ee_dsum(x1, x2), -in.omega * st.phi_ee(x1, x2)});
        acc.add({-kI * v * st.phi_oe_dsum(x1, x2), -in.omega * st.phi_oe(x1, x2)});
        acc.add({-kI * v * st.phi_oo_dsum(x1, x2), -in.omega * st.phi_oo(x1, x2)});

        // Photon-plus-cavity equations, sampled at x1.
        const double x = x1;
        acc.add({-kI * v * st.phi_ae_deriv(x), cavity_term * st.phi_ae(x),
                 vbar / std::sqrt(2.0) * (st.phi_ee(0.0, x) + st.phi_ee(x, 0.0))});
        acc.add({-kI * v * st.phi_oa_deriv(x), cavity_term * st.phi_oa(x),
                 vbar * st.phi_oe(x, 0.0)});

        // Discontinuity relations across x_i = 0.
        acc.add({st.phi_ee(0.0, x, Side::Plus), -st.phi_ee(0.0, x, Side::Minus),
                 -vbar / (kI * v * std::sqrt(2.0)) * st.phi_ae(x)});
        acc.add({st.phi_ee(x, 0.0, Side::Avg, Side::Plus),
                 -st.phi_ee(x, 0.0, Side::Avg, Side::Minus),
                 -vbar / (kI * v * std::sqrt(2.0)) * st.phi_ae(x)});
        acc.add({st.phi_oe(x, 0.0, Side::Plus), -st.phi_oe(x, 0.0, Side::Minus),
                 -vbar / (kI * v) * st.phi_oa(x)});
        // phi_oe is continuous in its odd coordinate.
        acc.add({st.phi_oe(0.0, x2), -st.phi_oe(0.0, x2)});
    }

    return acc.max_normalized;
}

ReconstructedChannels reconstruct_outgoing(const ScatteringState& st,
                                           const CoordinatePair& coords) {
    const double margin = 10.0 * st.params.v_c / (st.params.kappa + st.params.gamma);
    const bool both_positive = coords.x1 > 0.0 && coords.x2 > 0.0;
    const bool both_negative = coords.x1 < 0.0 && coords.x2 < 0.0;
    if (!both_positive && !both_negative) {
        throw RegionError("reconstruct_outgoing: coordinates straddle the scatterer");
    }
    const double a1 = std::abs(coords.x1);
    const double a2 = std::abs(coords.x2);
    if (a1 < margin || a2 < margin) {
        throw RegionError("reconstruct_outgoing: coordinates inside the asymptotic margin");
    }

    auto phi_eo = [&](double y1, double y2) { return st.phi_oe(y2, y1); };

    ReconstructedChannels out;
    out.tt = 0.25 * (st.phi_ee(a1, a2) + st.phi_oe(a1, a2) + phi_eo(a1, a2) + st.phi_oo(a1, a2));
    out.rr = 0.25 * (st.phi_ee(a1, a2) - st.phi_oe(a1, a2) - phi_eo(a1, a2) + st.phi_oo(a1, a2));
    out.rt = 1.0 / (2.0 * std::sqrt(2.0)) *
             (st.phi_ee(a1, a2) - st.phi_oo(a1, a2) + st.phi_oe(a2, a1) - st.phi_oe(a1, a2));
    return out;
}

}  // namespace wqed
