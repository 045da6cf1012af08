#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace cqexp::kernels {

using cxd = std::complex<double>;

/// Dense complex double kernels on contiguous row-major storage. Each entry
/// point has a scalar reference implementation; SIMD variants are selected
/// at startup from CPU features and can be forced with CQEXP_KERNELS.
struct Ops {
    const char* name;

    /// y[i] += a * x[i]
    void (*axpy)(std::size_t n, cxd a, const cxd* x, cxd* y);
    /// x[i] *= a
    void (*scale)(std::size_t n, cxd a, cxd* x);
    /// sum_i conj(x[i]) * y[i]
    cxd (*dotc)(std::size_t n, const cxd* x, const cxd* y);
    /// sum_i x[i] * y[i]
    cxd (*dotu)(std::size_t n, const cxd* x, const cxd* y);
    /// C = A * B with A n-by-m, B m-by-k, C n-by-k. C is overwritten.
    void (*gemm)(std::size_t n, std::size_t m, std::size_t k,
                 const cxd* A, const cxd* B, cxd* C);
    /// Plane-rotation row update: (x, y) <- (a*x + b*y, c*x + d*y).
    void (*rot2)(std::size_t n, cxd a, cxd b, cxd c, cxd d, cxd* x, cxd* y);
};

const Ops& scalar_ops();
/// AVX2+FMA variant, or nullptr when not compiled in / not supported here.
const Ops* avx2_ops();

/// The variant in effect (CQEXP_KERNELS respected on first call).
const Ops& active();
/// Force a variant by name ("scalar" or "avx2"); throws on unknown or
/// unsupported names. Intended for tests and benchmarking.
void select(const std::string& name);
/// Names of every variant usable on this machine.
std::vector<std::string> available();

}  // namespace cqexp::kernels
