#include "wqed/kernels.hpp"

#include <immintrin.h>

// AVX2 variants of the propagator inner loops. Each __m256d holds two
// complex doubles as [re0, im0, re1, im1]; complex products use the
// mul / permute / addsub pattern.

namespace wqed::kernels {

namespace {

// [re, im] per lane -> [im, re]
inline __m256d swap_reim(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// Per-pair complex multiply of packed [re0,im0,re1,im1] with broadcast (ar, ai).
inline __m256d cmul_broadcast(__m256d x, __m256d ar, __m256d ai) {
    const __m256d t1 = _mm256_mul_pd(ar, x);
    const __m256d t2 = _mm256_mul_pd(ai, swap_reim(x));
    return _mm256_addsub_pd(t1, t2);
}

void axpy_avx2(cplx* y, cplx a, const cplx* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul_broadcast(xv, ar, ai)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(cplx* x, cplx a, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    double* xd = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        _mm256_storeu_pd(xd + 2 * i, cmul_broadcast(xv, ar, ai));
    }
    for (; i < n; ++i) x[i] *= a;
}

cplx dot_conj_avx2(const cplx* x, const cplx* y, std::size_t n) {
    // Re += xr*yr + xi*yi lanewise; Im via [xi*yr, xr*yi] with a
    // signed horizontal combine at the end.
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        acc_im = _mm256_fmadd_pd(swap_reim(xv), yv, acc_im);
    }
    alignas(32) double re[4], im[4];
    _mm256_store_pd(re, acc_re);
    _mm256_store_pd(im, acc_im);
    cplx acc(re[0] + re[1] + re[2] + re[3], (im[1] + im[3]) - (im[0] + im[2]));
    for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double norm_sq_avx2(const cplx* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const double* xd = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double out = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) out += std::norm(x[i]);
    return out;
}

void csr_matvec_avx2(const CsrMatrix& a, const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* vd = reinterpret_cast<const double*>(a.vals.data());
    for (std::size_t r = 0; r < a.rows; ++r) {
        const std::int64_t begin = a.row_ptr[r];
        const std::int64_t end = a.row_ptr[r + 1];
        __m256d acc2 = _mm256_setzero_pd();
        std::int64_t k = begin;
        for (; k + 2 <= end; k += 2) {
            // Two nnz per iteration: values contiguous, x gathered per column.
            const __m256d av = _mm256_loadu_pd(vd + 2 * k);
            const __m128d x0 = _mm_loadu_pd(xd + 2 * a.cols[k]);
            const __m128d x1 = _mm_loadu_pd(xd + 2 * a.cols[k + 1]);
            const __m256d xv = _mm256_set_m128d(x1, x0);
            const __m256d t1 = _mm256_mul_pd(_mm256_unpacklo_pd(av, av), xv);
            const __m256d t2 = _mm256_mul_pd(_mm256_unpackhi_pd(av, av), swap_reim(xv));
            acc2 = _mm256_add_pd(acc2, _mm256_addsub_pd(t1, t2));
        }
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, acc2);
        cplx acc(lanes[0] + lanes[2], lanes[1] + lanes[3]);
        for (; k < end; ++k) acc += a.vals[k] * x[a.cols[k]];
        y[r] = acc;
    }
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops = {"avx2",        axpy_avx2,    scale_avx2,
                            dot_conj_avx2, norm_sq_avx2, csr_matvec_avx2};
    return ops;
}

}  // namespace wqed::kernels
