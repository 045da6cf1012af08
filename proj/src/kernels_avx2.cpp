// AVX2+FMA kernel variants. This translation unit is the only one compiled
// with -mavx2 -mfma; it must not be entered unless avx2_ops() reported
// support at runtime.
#if defined(CQEXP_HAVE_AVX2)

#include <algorithm>
#include <immintrin.h>

#include "cqexp/kernels.hpp"

namespace cqexp::kernels {
namespace {

// Two complex doubles per __m256d lane: [re0, im0, re1, im1].
// a*x with a broadcast: fmaddsub(ar, x, ai*swap(x)) gives
// [ar*re - ai*im, ar*im + ai*re] per element.
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d x) {
    __m256d xs = _mm256_permute_pd(x, 0x5);
    return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, xs));
}

void axpy_avx2(std::size_t n, cxd a, const cxd* x, cxd* y) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2, xp += 4, yp += 4) {
        __m256d xv = _mm256_loadu_pd(xp);
        __m256d yv = _mm256_loadu_pd(yp);
        _mm256_storeu_pd(yp, _mm256_add_pd(yv, cmul_broadcast(ar, ai, xv)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(std::size_t n, cxd a, cxd* x) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    double* xp = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2, xp += 4) {
        _mm256_storeu_pd(xp, cmul_broadcast(ar, ai, _mm256_loadu_pd(xp)));
    }
    for (; i < n; ++i) x[i] *= a;
}

// accA even lanes hold xr*yr sums, odd lanes xi*yi sums;
// accB even lanes xi*yr, odd lanes xr*yi.
struct DotAcc {
    __m256d a = _mm256_setzero_pd();
    __m256d b = _mm256_setzero_pd();

    inline void feed(const double* xp, const double* yp) {
        __m256d xv = _mm256_loadu_pd(xp);
        __m256d yv = _mm256_loadu_pd(yp);
        __m256d xs = _mm256_permute_pd(xv, 0x5);
        a = _mm256_fmadd_pd(xv, yv, a);
        b = _mm256_fmadd_pd(xs, yv, b);
    }

    inline void reduce(double out[4]) const {
        alignas(32) double av[4], bv[4];
        _mm256_store_pd(av, a);
        _mm256_store_pd(bv, b);
        out[0] = av[0] + av[2];  // sum xr*yr
        out[1] = av[1] + av[3];  // sum xi*yi
        out[2] = bv[0] + bv[2];  // sum xi*yr
        out[3] = bv[1] + bv[3];  // sum xr*yi
    }
};

cxd dotc_avx2(std::size_t n, const cxd* x, const cxd* y) {
    DotAcc acc;
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2, xp += 4, yp += 4) acc.feed(xp, yp);
    double s[4];
    acc.reduce(s);
    cxd out{s[0] + s[1], s[3] - s[2]};  // conj(x)*y
    for (; i < n; ++i) out += std::conj(x[i]) * y[i];
    return out;
}

cxd dotu_avx2(std::size_t n, const cxd* x, const cxd* y) {
    DotAcc acc;
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2, xp += 4, yp += 4) acc.feed(xp, yp);
    double s[4];
    acc.reduce(s);
    cxd out{s[0] - s[1], s[3] + s[2]};  // x*y
    for (; i < n; ++i) out += x[i] * y[i];
    return out;
}

void gemm_avx2(std::size_t n, std::size_t m, std::size_t k,
               const cxd* A, const cxd* B, cxd* C) {
    std::fill(C, C + n * k, cxd{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        cxd* ci = C + i * k;
        for (std::size_t l = 0; l < m; ++l) {
            axpy_avx2(k, A[i * m + l], B + l * k, ci);
        }
    }
}

void rot2_avx2(std::size_t n, cxd a, cxd b, cxd c, cxd d, cxd* x, cxd* y) {
    const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
    const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
    const __m256d cr = _mm256_set1_pd(c.real()), ci = _mm256_set1_pd(c.imag());
    const __m256d dr = _mm256_set1_pd(d.real()), di = _mm256_set1_pd(d.imag());
    double* xp = reinterpret_cast<double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2, xp += 4, yp += 4) {
        __m256d xv = _mm256_loadu_pd(xp);
        __m256d yv = _mm256_loadu_pd(yp);
        __m256d nx = _mm256_add_pd(cmul_broadcast(ar, ai, xv), cmul_broadcast(br, bi, yv));
        __m256d ny = _mm256_add_pd(cmul_broadcast(cr, ci, xv), cmul_broadcast(dr, di, yv));
        _mm256_storeu_pd(xp, nx);
        _mm256_storeu_pd(yp, ny);
    }
    for (; i < n; ++i) {
        const cxd xi = x[i];
        const cxd yi = y[i];
        x[i] = a * xi + b * yi;
        y[i] = c * xi + d * yi;
    }
}

}  // namespace

const Ops* avx2_ops_impl() {
    static const Ops ops{
        "avx2", axpy_avx2, scale_avx2, dotc_avx2,
        dotu_avx2, gemm_avx2, rot2_avx2,
    };
    return &ops;
}

}  // namespace cqexp::kernels

#endif  // CQEXP_HAVE_AVX2
