#include <algorithm>

#include "cqexp/kernels.hpp"

namespace cqexp::kernels {
namespace {

void axpy_scalar(std::size_t n, cxd a, const cxd* x, cxd* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(std::size_t n, cxd a, cxd* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cxd dotc_scalar(std::size_t n, const cxd* x, const cxd* y) {
    cxd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

cxd dotu_scalar(std::size_t n, const cxd* x, const cxd* y) {
    cxd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

// C = A*B, ikj order so the inner loop walks both B and C with unit stride.
void gemm_scalar(std::size_t n, std::size_t m, std::size_t k,
                 const cxd* A, const cxd* B, cxd* C) {
    std::fill(C, C + n * k, cxd{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        cxd* ci = C + i * k;
        for (std::size_t l = 0; l < m; ++l) {
            const cxd a = A[i * m + l];
            if (a == cxd{0.0, 0.0}) continue;
            const cxd* bl = B + l * k;
            for (std::size_t j = 0; j < k; ++j) ci[j] += a * bl[j];
        }
    }
}

void rot2_scalar(std::size_t n, cxd a, cxd b, cxd c, cxd d, cxd* x, cxd* y) {
    for (std::size_t i = 0; i < n; ++i) {
        const cxd xi = x[i];
        const cxd yi = y[i];
        x[i] = a * xi + b * yi;
        y[i] = c * xi + d * yi;
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{
        "scalar", axpy_scalar, scale_scalar, dotc_scalar,
        dotu_scalar, gemm_scalar, rot2_scalar,
    };
    return ops;
}

}  // namespace cqexp::kernels
