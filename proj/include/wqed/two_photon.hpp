#ifndef WQED_TWO_PHOTON_HPP
#define WQED_TWO_PHOTON_HPP

#include <optional>

#include "wqed/core_model.hpp"

namespace wqed {

/// Bound-state coefficients B, xi and the cavity-photon amplitudes mu.
struct BoundStateCoefficient {
    complex b;
    complex xi;
    complex mu1;
    complex mu2;
};

struct PlaneWaveParts {
    complex t_p;
    complex r_p;
    complex rt_p;
};

struct BoundStateParts {
    complex t_b;
    complex r_b;
    complex rt_b;
};

struct AmplitudeTriple {
    complex plane;
    complex bound;
    complex total;  // plane + bound, exactly
};

/// Outgoing two-photon amplitudes at one coordinate pair:
/// tt (both transmitted), rr (both reflected), rt (one of each).
struct ChannelAmplitudes {
    AmplitudeTriple tt;
    AmplitudeTriple rr;
    AmplitudeTriple rt;
};

/// Correlation quantities. A missing value means the corresponding
/// plane-wave part vanishes and the ratio is undefined there.
struct EtaPair {
    std::optional<double> eta_t;
    std::optional<double> eta_r;
};

BoundStateCoefficient bound_state_coefficient(const TwoPhotonInput& input,
                                              const SystemParams& params);

PlaneWaveParts plane_wave_parts(const TwoPhotonInput& input, const CoordinatePair& coords,
                                const SystemParams& params);

BoundStateParts bound_state_parts(const TwoPhotonInput& input, const CoordinatePair& coords,
                                  const SystemParams& params);

ChannelAmplitudes channel_amplitudes(const TwoPhotonInput& input, const CoordinatePair& coords,
                                     const SystemParams& params);

/// eta_t = |tt.total|^2 / |tt.plane|^2 and likewise for eta_r. Channels whose
/// plane part vanishes are reported as unset rather than raising.
EtaPair correlation_eta(const TwoPhotonInput& input, const CoordinatePair& coords,
                        const SystemParams& params);

}  // namespace wqed

#endif
