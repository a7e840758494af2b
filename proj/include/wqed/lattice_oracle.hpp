#ifndef WQED_LATTICE_ORACLE_HPP
#define WQED_LATTICE_ORACLE_HPP

#include <iosfwd>
#include <vector>

#include "wqed/core_model.hpp"
#include "wqed/kernels.hpp"

namespace wqed {

/// Discretized waveguide-plus-cavity configuration for the time-domain
/// oracle: a tight-binding chain (cosine band, group velocity
/// 2 J sin k0 at the carrier) with a side-coupled lossy Kerr site at the
/// chain center. All frequencies are in units of the hopping J.
struct LatticeModel {
    int n_sites = 400;
    double hopping = 1.0;
    double coupling = 0.42;          // chain-site-to-cavity coupling g
    double cavity_detuning = 0.0;    // relative to the carrier energy
    double kappa = 0.1764;           // intrinsic cavity loss, -i kappa/2 diagonal
    double u = 0.0;                  // Kerr term on double cavity occupation
    // At band center every co-moving pair (k, pi - k) shares the diagonal
    // phase exp(i pi (x1 + x2) / 2) exactly, so the transmitted pair cloud
    // does not disperse along the diagonal.
    double packet_center_k = 0.5 * kPi;
    double packet_width = 30.0;      // position-space std dev, in sites
    double packet_offset = -110.0;   // initial packet center relative to the coupling site
    double dt = 2.0;                 // propagator step
    double t_max = 115.0;
    double krylov_tol = 1e-9;        // local error per step, relative
    int krylov_dim = 32;
    std::size_t max_dimension = 200000;
    // Steady-state (monochromatic) solves: absorbing edge regions and a
    // transparent plane-wave source just right of the left absorber.
    int cap_width = 60;
    double cap_strength = 0.4;
    int source_offset = 12;          // mask ramp start, sites past the left absorber
    int mask_ramp = 12;

    int coupling_site() const { return n_sites / 2; }
    int cavity_index() const { return n_sites; }
    double group_velocity() const { return 2.0 * hopping * std::sin(packet_center_k); }
    /// Band energy of the carrier mode, -2 J cos k0.
    double carrier_energy() const { return -2.0 * hopping * std::cos(packet_center_k); }
    /// Continuum-limit waveguide decay rate, Gamma_eff = 2 g^2 / v.
    double gamma_eff() const { return 2.0 * coupling * coupling / group_velocity(); }
    /// Packet energy spread over the total linewidth; the narrowband
    /// mapping to the continuum model needs this << 1.
    double bandwidth_ratio() const {
        return group_velocity() / (2.0 * packet_width) / (kappa + gamma_eff());
    }

    /// Checks structural invariants; emits a narrowband warning to
    /// `warnings` when bandwidth_ratio() > 0.1.
    void validate(std::ostream* warnings = nullptr) const;
};

struct OracleResult {
    double eta_t_estimate = 0.0;
    complex t_bar_estimate{0.0, 0.0};
    double eta_error_bar = 0.0;
    double t_bar_error_bar = 0.0;
};

/// Single-excitation Hamiltonian over n_sites chain modes plus the cavity
/// (index n_sites). Non-Hermitian: the cavity diagonal carries -i kappa/2.
kernels::CsrMatrix build_single_excitation_hamiltonian(const LatticeModel& model);

/// Two-excitation sector in the symmetrized pair basis (i <= j), dimension
/// (M)(M+1)/2 for M = n_sites + 1 modes. Throws DimensionError when the
/// sector exceeds max_dimension.
kernels::CsrMatrix build_two_excitation_hamiltonian(const LatticeModel& model);

/// Pair-basis index for modes i <= j.
std::size_t pair_index(int i, int j, int n_modes);

/// Normalized single-particle Gaussian packet on the chain (cavity empty).
std::vector<complex> gaussian_packet(const LatticeModel& model);

/// Normalized symmetrized product of two copies of the Gaussian packet,
/// in the pair basis.
std::vector<complex> two_photon_product_state(const LatticeModel& model);

/// Evolves `state` by exp(-i H t_total) with an adaptive Arnoldi
/// propagator; local error per step is kept below `tol` relative to the
/// state norm. Throws ConvergenceError if the step size underflows.
void propagate(const kernels::CsrMatrix& h, std::vector<complex>& state, double t_total,
               double dt, double tol, int krylov_dim);

/// Joint-detection ratio eta_t from a pair of identically prepared runs
/// (interacting and u = 0 reference), read off the diagonal x1 = x2 of the
/// transmitted window. Throws SignalTooSmall when the transmitted
/// probability is below 1e-8.
double extract_eta_t(const std::vector<complex>& state_u, const std::vector<complex>& state_ref,
                     const LatticeModel& model, int window_shift = 0);

/// Single-photon transmission amplitude at the carrier, from a coupled run
/// referenced against a free (g = 0) run.
complex estimate_t_bar(const LatticeModel& model);

/// Imaginary absorbing diagonal (quadratic ramp) over the chain edges,
/// zero elsewhere and on the cavity.
std::vector<complex> absorber_profile(const LatticeModel& model);

/// Monochromatic steady scattering states at the carrier energy, solved
/// with absorbing boundaries and a transparent plane-wave source. These
/// avoid the finite-packet energy averaging that washes out spectrally
/// narrow interference features.
std::vector<complex> steady_single_photon(const LatticeModel& model);
std::vector<complex> steady_two_photon(const LatticeModel& model);

/// Carrier transmission amplitude from steady solves (coupled vs free).
complex steady_t_bar(const LatticeModel& model);

/// Joint-detection ratio from a pair of steady solves (interacting and
/// u = 0). The bound part of the transmitted wave is fitted as a complex
/// exponential in the relative coordinate and extrapolated to contact,
/// which rejects the lattice's large-momentum pair contamination; the
/// ratio against the plane part gives eta_t at coincident detectors.
double steady_eta_t(const std::vector<complex>& state_u, const std::vector<complex>& state_ref,
                    const LatticeModel& model, int window_shift = 0);

/// Full pipeline: two-excitation runs at two resolutions plus the
/// single-photon estimate, with convergence-difference error bars.
OracleResult run_two_photon_oracle(const LatticeModel& model);

}  // namespace wqed

#endif
