#include "wqed/two_photon.hpp"

namespace wqed {

namespace {

const complex kI(0.0, 1.0);

complex pole_checked_inverse(complex denom, const char* what) {
    if (denom == complex(0.0, 0.0)) throw PoleError(what);
    return 1.0 / denom;
}

}  // namespace

BoundStateCoefficient bound_state_coefficient(const TwoPhotonInput& input,
                                              const SystemParams& params) {
    params.validate();
    const double vbar = params.coupling_vbar();
    const double half_width = 0.5 * (params.kappa + params.gamma);

    const complex inv1 = pole_checked_inverse(complex(input.delta2() - input.delta_a, half_width),
                                              "bound_state_coefficient: delta2 - delta_a + i(kappa+gamma)/2 == 0");
    const complex inv2 = pole_checked_inverse(complex(input.delta1 - input.delta_a, half_width),
                                              "bound_state_coefficient: delta1 - delta_a + i(kappa+gamma)/2 == 0");
    const complex inv_cavity =
        pole_checked_inverse(complex(input.delta_a + params.u, -half_width),
                             "bound_state_coefficient: delta_a + u - i(kappa+gamma)/2 == 0");

    BoundStateCoefficient out;
    out.mu1 = vbar / (2.0 * kPi) * inv1;
    out.mu2 = vbar / (2.0 * kPi) * inv2;
    out.xi = kI * 4.0 * kPi * vbar * params.u / params.v_c * out.mu1 * out.mu2 * inv_cavity;
    out.b = vbar / (kI * params.v_c * std::sqrt(2.0)) * out.xi;
    return out;
}

PlaneWaveParts plane_wave_parts(const TwoPhotonInput& input, const CoordinatePair& coords,
                                const SystemParams& params) {
    // Single-photon amplitudes at v_c k_i - omega_a = delta_i - delta_a.
    const auto sp1 = single_photon_amplitudes(input.delta1 - input.delta_a, params);
    const auto sp2 = single_photon_amplitudes(input.delta2() - input.delta_a, params);

    const double xc = coords.center();
    const double x = coords.relative();
    const double v = params.v_c;

    PlaneWaveParts out;
    out.t_p = incoming_wavefunction(input, coords, v) * sp1.t_bar * sp2.t_bar;
    out.r_p = incoming_wavefunction(input, {-coords.x1, -coords.x2}, v) * sp1.r_bar * sp2.r_bar;
    // rt holds one left-mover at x1 < 0 and one right-mover at x2 > 0; in
    // literal detector coordinates the center-of-mass phase advances with
    // x2 - x1, the photons' total travelled distance.
    out.rt_p = 1.0 / (2.0 * kPi) * std::exp(kI * 0.5 * input.omega * x / v) *
               (sp2.r_bar * sp1.t_bar * std::exp(kI * 2.0 * input.delta1 * xc / v) +
                sp2.t_bar * sp1.r_bar * std::exp(-kI * 2.0 * input.delta1 * xc / v));
    return out;
}

BoundStateParts bound_state_parts(const TwoPhotonInput& input, const CoordinatePair& coords,
                                  const SystemParams& params) {
    const auto coeff = bound_state_coefficient(input, params);
    const double xc = coords.center();
    const double x = coords.relative();
    const double v = params.v_c;

    // Shared decay/oscillation exponent -i 2 delta_a - (kappa + gamma).
    const complex exponent(-(params.kappa + params.gamma), -2.0 * input.delta_a);

    BoundStateParts out;
    out.t_b = 0.25 * coeff.b * std::exp(kI * input.omega * xc / v) *
              std::exp(exponent * std::abs(x) / (2.0 * v));
    out.r_b = 0.25 * coeff.b * std::exp(-kI * input.omega * xc / v) *
              std::exp(exponent * std::abs(x) / (2.0 * v));
    out.rt_b = coeff.b / (2.0 * std::sqrt(2.0)) * std::exp(kI * 0.5 * input.omega * x / v) *
               std::exp(exponent * std::abs(xc) / v);
    return out;
}

ChannelAmplitudes channel_amplitudes(const TwoPhotonInput& input, const CoordinatePair& coords,
                                     const SystemParams& params) {
    const auto plane = plane_wave_parts(input, coords, params);
    const auto bound = bound_state_parts(input, coords, params);

    ChannelAmplitudes out;
    out.tt = {plane.t_p, bound.t_b, plane.t_p + bound.t_b};
    out.rr = {plane.r_p, bound.r_b, plane.r_p + bound.r_b};
    out.rt = {plane.rt_p, bound.rt_b, plane.rt_p + bound.rt_b};
    return out;
}

EtaPair correlation_eta(const TwoPhotonInput& input, const CoordinatePair& coords,
                        const SystemParams& params) {
    const auto ch = channel_amplitudes(input, coords, params);
    EtaPair out;
    if (std::norm(ch.tt.plane) > 0.0) {
        out.eta_t = std::norm(ch.tt.total) / std::norm(ch.tt.plane);
    }
    if (std::norm(ch.rr.plane) > 0.0) {
        out.eta_r = std::norm(ch.rr.total) / std::norm(ch.rr.plane);
    }
    return out;
}

}  // namespace wqed
