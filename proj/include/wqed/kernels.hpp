#ifndef WQED_KERNELS_HPP
#define WQED_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace wqed::kernels {

using cplx = std::complex<double>;

/// Compressed sparse row matrix over complex doubles.
struct CsrMatrix {
    std::size_t rows = 0;
    std::vector<std::int64_t> row_ptr;
    std::vector<std::int64_t> cols;
    std::vector<cplx> vals;
};

/// Dispatch table for the dense inner loops of the lattice propagator.
/// The scalar table is the reference; vector variants must agree with it
/// to floating-point reassociation accuracy and are equivalence-tested.
struct Ops {
    const char* name;
    // y += a * x
    void (*axpy)(cplx* y, cplx a, const cplx* x, std::size_t n);
    // x *= a
    void (*scale)(cplx* x, cplx a, std::size_t n);
    // sum conj(x) * y
    cplx (*dot_conj)(const cplx* x, const cplx* y, std::size_t n);
    // sum |x|^2
    double (*norm_sq)(const cplx* x, std::size_t n);
    // y = A x
    void (*csr_matvec)(const CsrMatrix& a, const cplx* x, cplx* y);
};

const Ops& scalar_ops();
#if defined(WQED_HAVE_AVX2_BUILD)
const Ops& avx2_ops();
#endif

/// Best table for this CPU. The WQED_KERNEL environment variable
/// ("scalar" or "avx2") overrides detection.
const Ops& active_ops();

/// Vector table usable on this CPU, or nullptr when the build or host
/// lacks one.
const Ops* vector_ops();

bool avx2_available();

}  // namespace wqed::kernels

#endif
