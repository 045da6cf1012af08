#include "cqexp/matrix.hpp"

#include <cmath>
#include <sstream>

#include "cqexp/errors.hpp"

namespace cqexp {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {
    if (dim == 0) throw ValidationError("matrix dimension must be positive");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    kernels::active().axpy(a_.size(), cxd{1.0, 0.0}, rhs.a_.data(), a_.data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    kernels::active().axpy(a_.size(), cxd{-1.0, 0.0}, rhs.a_.data(), a_.data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cxd a) {
    kernels::active().scale(a_.size(), a, a_.data());
    return *this;
}

void ComplexMatrix::add_scaled(cxd a, const ComplexMatrix& rhs) {
    kernels::active().axpy(a_.size(), a, rhs.a_.data(), a_.data());
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

cxd ComplexMatrix::trace() const {
    cxd t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cxd& z : a_) {
        double v = std::abs(z);
        if (v > m) m = v;
    }
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const cxd& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("mul: dimension mismatch");
    ComplexMatrix c(a.dim());
    kernels::active().gemm(a.dim(), a.dim(), a.dim(), a.data(), b.data(), c.data());
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix c(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const cxd aij = a(i, j);
            for (std::size_t k = 0; k < db; ++k) {
                // one contiguous row segment of the (i,k) block
                cxd* dst = c.row(i * db + k) + j * db;
                kernels::active().axpy(db, aij, b.row(k), dst);
            }
        }
    return c;
}

cxd trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("trace_of_product: dimension mismatch");
    const std::size_t d = a.dim();
    cxd t{0.0, 0.0};
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t l = 0; l < d; ++l) t += a(i, l) * b(l, i);
    return t;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            double v = std::abs(a(i, j) - b(i, j));
            if (v > m) m = v;
        }
    return m;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.all_finite()) throw ValidationError("Hermitian matrix has non-finite entries");
    const std::size_t d = m_.dim();
    const double tol = 1e-12 * (1.0 + m_.max_abs());
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            const double dev = std::abs(m_(i, j) - std::conj(m_(j, i)));
            if (dev > tol) {
                std::ostringstream os;
                os << "matrix is not Hermitian: |A(" << i << "," << j
                   << ") - conj(A(" << j << "," << i << "))| = " << dev
                   << " exceeds " << tol;
                throw ValidationError(os.str());
            }
            // (A + A^dagger)/2; keeps a_ij == conj(a_ji) bit-exact
            const cxd avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
            m_(i, j) = avg;
            m_(j, i) = std::conj(avg);
        }
        m_(i, i) = cxd{m_(i, i).real(), 0.0};
    }
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
    return HermitianMatrix(ComplexMatrix::identity(dim));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return HermitianMatrix(std::move(m));
}

double HermitianMatrix::trace_real() const { return m_.trace().real(); }

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& rhs) {
    m_ += rhs.m_;
    return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& rhs) {
    m_ -= rhs.m_;
    return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double a) {
    m_ *= cxd{a, 0.0};
    return *this;
}

void HermitianMatrix::add_scaled(double a, const HermitianMatrix& rhs) {
    m_.add_scaled(cxd{a, 0.0}, rhs.m_);
}

}  // namespace cqexp
