#include "wqed/core_model.hpp"

namespace wqed {

SinglePhotonAmplitudes single_photon_amplitudes(double detuning, const SystemParams& params) {
    params.validate();
    const complex denom(detuning, 0.5 * (params.kappa + params.gamma));
    if (denom == complex(0.0, 0.0)) {
        throw PoleError("single_photon_amplitudes: detuning + i(kappa+gamma)/2 == 0");
    }
    SinglePhotonAmplitudes out;
    out.t_bar = complex(detuning, 0.5 * params.kappa) / denom;
    out.r_bar = complex(0.0, -0.5 * params.gamma) / denom;
    return out;
}

complex incoming_wavefunction(const TwoPhotonInput& input, const CoordinatePair& coords,
                              double v_c) {
    const double xc = coords.center();
    const double x = coords.relative();
    const complex phase = std::exp(complex(0.0, input.omega * xc / v_c));
    return phase * std::cos(input.delta1 * x / v_c) / (std::sqrt(2.0) * kPi);
}

double gamma_from_coupling(double coupling_v, double v_c) {
    if (!(v_c > 0.0)) throw std::invalid_argument("gamma_from_coupling: v_c must be > 0");
    return 2.0 * coupling_v * coupling_v / v_c;
}

}  // namespace wqed
