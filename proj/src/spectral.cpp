#include "cqexp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cqexp/config.hpp"
#include "cqexp/errors.hpp"

namespace cqexp {
namespace {

double largest_offdiag(const ComplexMatrix& a) {
    const std::size_t d = a.dim();
    double m = 0.0;
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p + 1; q < d; ++q) m = std::max(m, std::abs(a(p, q)));
    return m;
}

}  // namespace

SpectralDecomposition eigh(const HermitianMatrix& input) {
    const auto& cfg = Config::get();
    const std::size_t d = input.dim();
    ComplexMatrix a = input.matrix();
    // Accumulates Q^dagger as row operations; eigenvectors are its adjoint.
    ComplexMatrix qx = ComplexMatrix::identity(d);
    const auto& ops = kernels::active();

    const double scale = a.max_abs();
    const double tol = cfg.jacobi_off_tolerance * scale;
    const std::size_t rotation_cap = cfg.jacobi_rotation_factor * d * d;
    std::size_t rotations = 0;

    if (scale > 0.0 && d > 1) {
        while (largest_offdiag(a) > tol) {
            for (std::size_t p = 0; p < d; ++p) {
                for (std::size_t q = p + 1; q < d; ++q) {
                    const cxd g = a(p, q);
                    const double ag = std::abs(g);
                    if (ag <= tol) continue;
                    if (++rotations > rotation_cap) {
                        std::ostringstream os;
                        os << "eigh did not converge within " << rotation_cap
                           << " rotations (dim " << d << ")";
                        throw ConvergenceError(os.str());
                    }
                    const double alpha = a(p, p).real();
                    const double beta = a(q, q).real();
                    const cxd w = g / ag;  // phase of the off-diagonal entry
                    const double tau = (beta - alpha) / (2.0 * ag);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;

                    // Unitary U: U_pp = c*w, U_pq = s*w, U_qp = -s, U_qq = c.
                    // Row update A <- U^dagger A, then restore columns by
                    // conjugate symmetry and set the 2x2 block analytically.
                    const cxd cwc = c * std::conj(w);
                    const cxd swc = s * std::conj(w);
                    ops.rot2(d, cwc, cxd{-s, 0.0}, swc, cxd{c, 0.0}, a.row(p), a.row(q));
                    ops.rot2(d, cwc, cxd{-s, 0.0}, swc, cxd{c, 0.0}, qx.row(p), qx.row(q));

                    a(p, p) = cxd{alpha - t * ag, 0.0};
                    a(q, q) = cxd{beta + t * ag, 0.0};
                    a(p, q) = cxd{0.0, 0.0};
                    a(q, p) = cxd{0.0, 0.0};
                    for (std::size_t k = 0; k < d; ++k) {
                        if (k == p || k == q) continue;
                        a(k, p) = std::conj(a(p, k));
                        a(k, q) = std::conj(a(q, k));
                    }
                }
            }
        }
    }

    SpectralDecomposition out{std::vector<double>(d), qx.adjoint()};
    for (std::size_t i = 0; i < d; ++i) out.eigenvalues[i] = a(i, i).real();

    // ascending order, stable under ties
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t i, std::size_t j) {
        return out.eigenvalues[i] < out.eigenvalues[j];
    });
    std::vector<double> sorted_vals(d);
    ComplexMatrix sorted_vecs(d);
    for (std::size_t j = 0; j < d; ++j) {
        sorted_vals[j] = out.eigenvalues[perm[j]];
        for (std::size_t i = 0; i < d; ++i) sorted_vecs(i, j) = out.eigenvectors(i, perm[j]);
    }
    out.eigenvalues = std::move(sorted_vals);
    out.eigenvectors = std::move(sorted_vecs);
    return out;
}

HermitianMatrix SpectralDecomposition::apply(const ScalarFn& f, bool support_only) const {
    const auto& cfg = Config::get();
    const std::size_t d = eigenvalues.size();
    std::vector<double> mapped(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double ev = eigenvalues[i];
        if (support_only && std::abs(ev) <= cfg.eigen_floor) {
            mapped[i] = 0.0;
            continue;
        }
        const double y = f(ev);
        if (!std::isfinite(y)) {
            std::ostringstream os;
            os << "spectral function undefined at eigenvalue " << ev;
            throw DomainError(os.str(), ev);
        }
        mapped[i] = y;
    }
    // V f(diag) V^dagger
    ComplexMatrix w = eigenvectors;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) w(i, j) *= mapped[j];
    ComplexMatrix r(d);
    kernels::active().gemm(d, d, d, w.data(), eigenvectors.adjoint().data(), r.data());
    return HermitianMatrix(std::move(r));
}

double SpectralDecomposition::trace_apply(const ScalarFn& f, bool support_only) const {
    const auto& cfg = Config::get();
    double total = 0.0;
    for (double ev : eigenvalues) {
        if (support_only && std::abs(ev) <= cfg.eigen_floor) continue;
        const double y = f(ev);
        if (!std::isfinite(y)) {
            std::ostringstream os;
            os << "spectral function undefined at eigenvalue " << ev;
            throw DomainError(os.str(), ev);
        }
        total += y;
    }
    return total;
}

bool SpectralDecomposition::has_zero_eigenvalue() const {
    const double floor = Config::get().eigen_floor;
    for (double ev : eigenvalues)
        if (std::abs(ev) <= floor) return true;
    return false;
}

HermitianMatrix apply_spectral_fn(const HermitianMatrix& a, const ScalarFn& f,
                                  bool support_only) {
    return eigh(a).apply(f, support_only);
}

namespace {

// Shared PSD preamble: eigenvalues in [-floor, 0) clip to zero, below
// -floor is a hard error.
void clip_psd(SpectralDecomposition& dec, const char* op) {
    const double floor = Config::get().eigen_floor;
    for (double& ev : dec.eigenvalues) {
        if (ev < -floor) {
            std::ostringstream os;
            os << op << ": eigenvalue " << ev << " below -" << floor
               << " violates positive semidefiniteness";
            throw DomainError(os.str(), ev);
        }
        if (ev < 0.0) ev = 0.0;
    }
}

}  // namespace

HermitianMatrix spectral_pow(const HermitianMatrix& a, double p, bool support_only) {
    auto dec = eigh(a);
    clip_psd(dec, "spectral_pow");
    return dec.apply([p](double x) { return std::pow(x, p); }, support_only);
}

HermitianMatrix spectral_log(const HermitianMatrix& a, bool support_only) {
    auto dec = eigh(a);
    clip_psd(dec, "spectral_log");
    return dec.apply([](double x) { return std::log(x); }, support_only);
}

double trace_spectral_pow(const HermitianMatrix& a, double p) {
    auto dec = eigh(a);
    clip_psd(dec, "trace_spectral_pow");
    return dec.trace_apply([p](double x) { return std::pow(x, p); });
}

HermitianMatrix matrix_entropy(const HermitianMatrix& a) {
    auto dec = eigh(a);
    clip_psd(dec, "matrix_entropy");
    return dec.apply([](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; });
}

}  // namespace cqexp
