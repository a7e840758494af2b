#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "wqed/core_model.hpp"
#include "wqed/lattice_oracle.hpp"
#include "wqed/two_photon.hpp"

using namespace wqed;
using kernels::CsrMatrix;

namespace {

Eigen::MatrixXcd to_dense(const CsrMatrix& a) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(a.rows, a.rows);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::int64_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a.cols[k])) += a.vals[k];
        }
    }
    return m;
}

LatticeModel small_model() {
    LatticeModel m;
    m.n_sites = 12;
    m.coupling = 0.3;
    m.kappa = 0.05;
    m.packet_width = 2.0;
    m.packet_offset = -3.0;
    m.t_max = 4.0;
    m.dt = 1.0;
    m.krylov_dim = 8;
    return m;
}

}  // namespace

TEST_CASE("pair index enumerates the upper triangle") {
    const int m = 5;
    std::size_t expect = 0;
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            CHECK(pair_index(i, j, m) == expect);
            ++expect;
        }
    }
    CHECK(expect == static_cast<std::size_t>(m) * (m + 1) / 2);
}

TEST_CASE("single-excitation hamiltonian structure") {
    const auto model = small_model();
    const auto dense = to_dense(build_single_excitation_hamiltonian(model));
    REQUIRE(dense.rows() == model.n_sites + 1);

    CHECK(dense(0, 1) == complex(-model.hopping, 0.0));
    CHECK(dense(4, 3) == complex(-model.hopping, 0.0));
    const int cav = model.cavity_index();
    const int c0 = model.coupling_site();
    CHECK(dense(c0, cav) == complex(model.coupling, 0.0));
    CHECK(dense(cav, c0) == complex(model.coupling, 0.0));
    CHECK(std::abs(dense(cav, cav) - complex(model.carrier_energy() + model.cavity_detuning,
                                             -0.5 * model.kappa)) < 1e-14);
    // Hermitian apart from the cavity loss.
    Eigen::MatrixXcd anti = dense - dense.adjoint();
    anti(cav, cav) = 0.0;
    CHECK(anti.norm() < 1e-15);
}

TEST_CASE("two-excitation hamiltonian matches the one-body lift") {
    auto model = small_model();
    model.u = 0.7;
    const auto h1 = to_dense(build_single_excitation_hamiltonian(model));
    const auto h2 = to_dense(build_two_excitation_hamiltonian(model));
    const int m_modes = model.n_sites + 1;

    // Lift to the pair basis by hand: H e_ij = sum_a h(a,i) e_aj sqrt-corrected.
    const std::size_t dim = static_cast<std::size_t>(m_modes) * (m_modes + 1) / 2;
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < m_modes; ++i) {
        for (int j = i; j < m_modes; ++j) {
            const auto col = pair_index(i, j, m_modes);
            const double inv_norm = (i == j) ? 1.0 / std::sqrt(2.0) : 1.0;
            auto add = [&](int keep, int move) {
                for (int a = 0; a < m_modes; ++a) {
                    if (h1(a, move) == complex(0.0, 0.0)) continue;
                    const double boost = (a == keep) ? std::sqrt(2.0) : 1.0;
                    expect(pair_index(std::min(a, keep), std::max(a, keep), m_modes), col) +=
                        h1(a, move) * boost * inv_norm;
                }
            };
            add(j, i);
            add(i, j);
        }
    }
    const int cav = model.cavity_index();
    expect(pair_index(cav, cav, m_modes), pair_index(cav, cav, m_modes)) += 2.0 * model.u;
    CHECK((h2 - expect).norm() < 1e-13);
}

TEST_CASE("dimension budget is enforced") {
    auto model = small_model();
    model.max_dimension = 10;
    CHECK_THROWS_AS(build_two_excitation_hamiltonian(model), DimensionError);
}

TEST_CASE("packet states are normalized") {
    const auto model = small_model();
    const auto f = gaussian_packet(model);
    double n1 = 0.0;
    for (const auto& v : f) n1 += std::norm(v);
    CHECK(n1 == doctest::Approx(1.0).epsilon(1e-13));

    const auto psi = two_photon_product_state(model);
    double n2 = 0.0;
    for (const auto& v : psi) n2 += std::norm(v);
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("arnoldi propagation matches a dense matrix exponential") {
    auto model = small_model();
    model.cavity_detuning = 0.4;
    const auto h = build_single_excitation_hamiltonian(model);
    const Eigen::MatrixXcd dense = to_dense(h);

    auto state = gaussian_packet(model);
    Eigen::VectorXcd v0(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) v0(static_cast<Eigen::Index>(i)) = state[i];

    const double t = 3.0;
    propagate(h, state, t, 1.0, 1e-11, 8);

    const Eigen::MatrixXcd u = (complex(0.0, -1.0) * t * dense).exp();
    const Eigen::VectorXcd expect = u * v0;
    double err = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        err = std::max(err, std::abs(state[i] - expect(static_cast<Eigen::Index>(i))));
    }
    CHECK(err < 1e-9);
}

TEST_CASE("lossy propagation never gains norm") {
    const auto model = small_model();
    const auto h = build_single_excitation_hamiltonian(model);
    auto state = gaussian_packet(model);
    propagate(h, state, 6.0, 1.0, 1e-9, 8);
    double n = 0.0;
    for (const auto& v : state) n += std::norm(v);
    CHECK(n <= 1.0 + 1e-12);
    CHECK(n < 1.0);  // some amplitude reaches the lossy cavity
}

TEST_CASE("model validation flags broadband packets") {
    auto model = small_model();
    model.packet_width = 0.5;
    std::ostringstream warnings;
    model.validate(&warnings);
    CHECK(warnings.str().find("bandwidth") != std::string::npos);

    model.n_sites = 2;
    CHECK_THROWS_AS(model.validate(), std::invalid_argument);
}

TEST_CASE("single-photon lineshape against the continuum closed form") {
    LatticeModel model;  // production-scale defaults, single-excitation only
    const double gamma = model.gamma_eff();
    const SystemParams continuum{gamma, model.kappa, 0.0, 0.0, 1.0};
    for (const double delta : {0.0, 0.1}) {
        LatticeModel m = model;
        m.cavity_detuning = -delta;
        const complex t_lattice = estimate_t_bar(m);
        const complex t_exact = single_photon_amplitudes(delta, continuum).t_bar;
        CHECK(std::abs(std::norm(t_lattice) - std::norm(t_exact)) < 0.05);
    }
}

TEST_CASE("steady single-photon solve emits a clean carrier wave") {
    LatticeModel model;
    model.coupling = 0.0;
    const auto psi = steady_single_photon(model);
    // Interior amplitude should be the unit carrier plane wave.
    for (int n : {150, 200, 250, 300}) {
        const complex demod =
            psi[n] * std::exp(complex(0.0, -1.0) * model.packet_center_k * double(n));
        CHECK(std::abs(demod - complex(1.0, 0.0)) < 0.05);
    }
    // Left of the source ramp there is only residual leakage.
    CHECK(std::abs(psi[30]) < 0.05);
}

TEST_CASE("steady transmission matches the lattice closed form on resonance") {
    LatticeModel model;  // gamma_eff == kappa, so t_bar = 1/2 exactly
    const complex t = steady_t_bar(model);
    CHECK(std::abs(t - complex(0.5, 0.0)) < 0.02);
}

TEST_CASE("steady two-photon state reduces to the product at u = 0") {
    LatticeModel model;
    const auto psi1 = steady_single_photon(model);
    const auto psi2 = steady_two_photon(model);
    const int mm = model.n_sites + 1;
    for (int n : {220, 260, 300}) {
        CHECK(std::abs(psi2[pair_index(n, n, mm)] - psi1[n] * psi1[n]) < 1e-12);
    }
    const auto ref = psi2;
    CHECK(steady_eta_t(psi2, ref, model) == 1.0);
}

TEST_CASE("steady eta_t reproduces the strong-blockade closed form") {
    LatticeModel model;
    model.u = 10.0 * model.kappa;
    LatticeModel ref = model;
    ref.u = 0.0;
    const auto psi_u = steady_two_photon(model);
    const auto psi_0 = steady_two_photon(ref);
    const double eta = steady_eta_t(psi_u, psi_0, model);
    const SystemParams continuum{model.gamma_eff(), model.kappa, model.u, 0.0, 1.0};
    const auto exact = correlation_eta({0.0, 0.0, 0.0}, {0.0, 0.0}, continuum);
    CHECK(std::abs(eta - *exact.eta_t) / *exact.eta_t < 0.10);
}

TEST_CASE("steady solve rejects impossible geometry") {
    LatticeModel model;
    model.n_sites = 40;
    CHECK_THROWS_AS(steady_single_photon(model), std::invalid_argument);
}
