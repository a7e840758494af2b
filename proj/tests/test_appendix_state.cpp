#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wqed/appendix_state.hpp"
#include "wqed/two_photon.hpp"

using namespace wqed;

namespace {

std::vector<CoordinatePair> sample_grid() {
    std::vector<CoordinatePair> points;
    for (const double x1 : {-3.7, -1.2, 0.6, 2.9}) {
        for (const double x2 : {-2.4, -0.8, 1.5, 4.1}) {
            points.push_back({x1, x2});
        }
    }
    return points;
}

}  // namespace

TEST_CASE("closed forms satisfy the steady-state equations") {
    const std::vector<std::pair<SystemParams, TwoPhotonInput>> cases = {
        {{1.0, 1.0, 10.0, 0.0, 1.0}, {0.0, 0.0, 0.0}},
        {{2.0, 0.5, 3.0, 0.0, 1.0}, {0.9, -0.3, 1.2}},
        {{100.0, 1.0, 0.01, 0.0, 1.0}, {0.0, 0.5, 0.0}},
        {{0.3, 4.0, 0.0, 0.0, 1.0}, {-1.1, 2.0, -0.7}},
    };
    for (const auto& [params, input] : cases) {
        const auto state = build_scattering_state(input, params);
        CHECK(residual_check(state, sample_grid()) < 1e-10);
    }
}

TEST_CASE("residual reacts to a perturbed bound-state amplitude") {
    auto state = build_scattering_state({0.0, 0.0, 0.0}, {1.0, 1.0, 10.0, 0.0, 1.0});
    const double clean = residual_check(state, sample_grid());
    state.b *= 1.01;
    const double perturbed = residual_check(state, sample_grid());
    CHECK(clean < 1e-10);
    CHECK(perturbed > 1e-4);
}

TEST_CASE("decay exponent matches the total linewidth") {
    const SystemParams params{2.0, 0.7, 5.0, 0.0, 1.0};
    const auto state = build_scattering_state({0.4, 0.1, 1.0}, params);
    CHECK(state.lambda_minus.real() ==
          doctest::Approx(-(params.kappa + params.gamma) / 2.0).epsilon(1e-14));
}

TEST_CASE("sector recombination reproduces the channel amplitudes") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> far(12.0, 40.0);
    std::uniform_real_distribution<double> par(0.2, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        const SystemParams params{par(rng), par(rng), 4.0 * par(rng), 0.0, 1.0};
        const TwoPhotonInput input{par(rng) - 1.5, par(rng) - 1.5, par(rng)};
        const auto state = build_scattering_state(input, params);
        const double margin = 10.0 / (params.kappa + params.gamma);
        const CoordinatePair coords{margin + far(rng), margin + far(rng)};

        const auto rec = reconstruct_outgoing(state, coords);
        const auto ch = channel_amplitudes(input, coords, params);
        const auto ch_rr = channel_amplitudes(input, {-coords.x1, -coords.x2}, params);
        const auto ch_rt = channel_amplitudes(input, {-coords.x1, coords.x2}, params);

        CHECK(std::abs(rec.tt - ch.tt.total) < 1e-10);
        CHECK(std::abs(rec.rr - ch_rr.rr.total) < 1e-10);
        CHECK(std::abs(rec.rt - ch_rt.rt.total) < 1e-10);
    }
}

TEST_CASE("reconstruction rejects near-field and mixed-side coordinates") {
    const auto state = build_scattering_state({0.0, 0.0, 0.0}, {1.0, 1.0, 10.0, 0.0, 1.0});
    CHECK_THROWS_AS(reconstruct_outgoing(state, {1.0, 30.0}), RegionError);
    CHECK_THROWS_AS(reconstruct_outgoing(state, {-30.0, 30.0}), RegionError);
    CHECK_NOTHROW(reconstruct_outgoing(state, {-30.0, -25.0}));
}
