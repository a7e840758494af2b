#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wqed/kernels.hpp"

using namespace wqed::kernels;

namespace {

std::vector<cplx> random_vec(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = {d(rng), d(rng)};
    return v;
}

CsrMatrix random_csr(std::mt19937& rng, std::size_t n, int nnz_per_row) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::uniform_int_distribution<std::int64_t> col(0, static_cast<std::int64_t>(n) - 1);
    CsrMatrix a;
    a.rows = n;
    a.row_ptr.push_back(0);
    std::uniform_int_distribution<int> extra(0, 3);
    for (std::size_t r = 0; r < n; ++r) {
        const int k = std::max(0, nnz_per_row + extra(rng) - 1);
        for (int j = 0; j < k; ++j) {
            a.cols.push_back(col(rng));
            a.vals.push_back({d(rng), d(rng)});
        }
        a.row_ptr.push_back(static_cast<std::int64_t>(a.cols.size()));
    }
    return a;
}

constexpr std::size_t kSizes[] = {0, 1, 2, 3, 7, 64, 257, 4096};

}  // namespace

TEST_CASE("scalar kernels match straightforward evaluation") {
    std::mt19937 rng(5);
    const auto& ops = scalar_ops();
    const auto x = random_vec(rng, 100);
    auto y = random_vec(rng, 100);
    const cplx a{0.3, -0.8};

    cplx dot_ref(0.0, 0.0);
    double nrm_ref = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot_ref += std::conj(x[i]) * y[i];
        nrm_ref += std::norm(x[i]);
    }
    CHECK(std::abs(ops.dot_conj(x.data(), y.data(), x.size()) - dot_ref) < 1e-13);
    CHECK(ops.norm_sq(x.data(), x.size()) == doctest::Approx(nrm_ref).epsilon(1e-14));

    auto y2 = y;
    ops.axpy(y2.data(), a, x.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(std::abs(y2[i] - (y[i] + a * x[i])) < 1e-15);
    }
}

TEST_CASE("vector kernels agree with the scalar reference") {
    const Ops* vec = vector_ops();
    if (vec == nullptr) return;  // host without a usable vector build
    const auto& ref = scalar_ops();
    std::mt19937 rng(17);

    for (const std::size_t n : kSizes) {
        const auto x = random_vec(rng, n);
        const auto y0 = random_vec(rng, n);
        const cplx a{-1.7, 0.4};

        auto ya = y0;
        auto yb = y0;
        ref.axpy(ya.data(), a, x.data(), n);
        vec->axpy(yb.data(), a, x.data(), n);
        auto xa = x;
        auto xb = x;
        ref.scale(xa.data(), a, n);
        vec->scale(xb.data(), a, n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(ya[i] - yb[i]) < 1e-14);
            CHECK(std::abs(xa[i] - xb[i]) < 1e-14);
        }

        const double tol = 1e-12 * (1.0 + static_cast<double>(n));
        CHECK(std::abs(ref.dot_conj(x.data(), y0.data(), n) -
                       vec->dot_conj(x.data(), y0.data(), n)) < tol);
        CHECK(std::abs(ref.norm_sq(x.data(), n) - vec->norm_sq(x.data(), n)) < tol);
    }
}

TEST_CASE("vector matvec agrees with the scalar reference") {
    const Ops* vec = vector_ops();
    if (vec == nullptr) return;
    const auto& ref = scalar_ops();
    std::mt19937 rng(23);

    for (const std::size_t n : {1u, 5u, 64u, 501u}) {
        const auto a = random_csr(rng, n, 4);
        const auto x = random_vec(rng, n);
        std::vector<cplx> ya(n), yb(n);
        ref.csr_matvec(a, x.data(), ya.data());
        vec->csr_matvec(a, x.data(), yb.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ya[i] - yb[i]) < 1e-13);
    }
}

TEST_CASE("dispatch honors the environment override") {
    // active_ops caches its choice, so only consistency can be checked here.
    const auto& ops = active_ops();
    CHECK(ops.name != nullptr);
    if (!avx2_available()) CHECK(std::string(ops.name) == "scalar");
}
