#include "wqed/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace wqed::kernels {

namespace {

void axpy_scalar(cplx* y, cplx a, const cplx* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(cplx* x, cplx a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cplx dot_conj_scalar(const cplx* x, const cplx* y, std::size_t n) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double norm_sq_scalar(const cplx* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
    return acc;
}

void csr_matvec_scalar(const CsrMatrix& a, const cplx* x, cplx* y) {
    for (std::size_t r = 0; r < a.rows; ++r) {
        cplx acc(0.0, 0.0);
        for (std::int64_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
            acc += a.vals[k] * x[a.cols[k]];
        }
        y[r] = acc;
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops = {"scalar",     axpy_scalar,    scale_scalar,
                            dot_conj_scalar, norm_sq_scalar, csr_matvec_scalar};
    return ops;
}

bool avx2_available() {
#if defined(WQED_HAVE_AVX2_BUILD)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Ops* vector_ops() {
#if defined(WQED_HAVE_AVX2_BUILD)
    if (avx2_available()) return &avx2_ops();
#endif
    return nullptr;
}

const Ops& active_ops() {
    static const Ops* selected = [] {
        const char* env = std::getenv("WQED_KERNEL");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_ops();
#if defined(WQED_HAVE_AVX2_BUILD)
        if (env != nullptr && std::strcmp(env, "avx2") == 0) return &avx2_ops();
        if (avx2_available()) return &avx2_ops();
#endif
        return &scalar_ops();
    }();
    return *selected;
}

}  // namespace wqed::kernels
