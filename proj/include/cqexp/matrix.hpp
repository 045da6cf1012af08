#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cqexp/kernels.hpp"

namespace cqexp {

using cxd = std::complex<double>;

/// Dense square complex matrix, row-major. All entries must stay finite;
/// arithmetic goes through the kernel layer.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(std::size_t dim);  // zero-initialized
    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    cxd& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cxd& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    cxd* data() { return a_.data(); }
    const cxd* data() const { return a_.data(); }
    cxd* row(std::size_t i) { return a_.data() + i * dim_; }
    const cxd* row(std::size_t i) const { return a_.data() + i * dim_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cxd a);
    /// this += a * rhs
    void add_scaled(cxd a, const ComplexMatrix& rhs);

    ComplexMatrix adjoint() const;
    cxd trace() const;
    double max_abs() const;
    bool all_finite() const;

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(cxd a, ComplexMatrix m) { return m *= a; }

  private:
    std::size_t dim_;
    std::vector<cxd> a_;
};

/// C = A * B through the active kernel.
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);
/// Kronecker product, dim(a)*dim(b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// tr(A * B) without forming the product.
cxd trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);
/// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hermitian matrix. Construction checks
/// max |A_jk - conj(A_kj)| <= 1e-12 * (1 + max|A|) and then symmetrizes
/// via (A + A^dagger)/2, so the stored entries satisfy a_jk == conj(a_kj)
/// exactly.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(ComplexMatrix m);
    static HermitianMatrix identity(std::size_t dim);
    static HermitianMatrix diagonal(const std::vector<double>& d);

    std::size_t dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }
    const cxd& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    double trace_real() const;
    double max_abs() const { return m_.max_abs(); }

    HermitianMatrix& operator+=(const HermitianMatrix& rhs);
    HermitianMatrix& operator-=(const HermitianMatrix& rhs);
    HermitianMatrix& operator*=(double a);
    void add_scaled(double a, const HermitianMatrix& rhs);

    friend HermitianMatrix operator+(HermitianMatrix lhs, const HermitianMatrix& rhs) { return lhs += rhs; }
    friend HermitianMatrix operator-(HermitianMatrix lhs, const HermitianMatrix& rhs) { return lhs -= rhs; }
    friend HermitianMatrix operator*(double a, HermitianMatrix m) { return m *= a; }

  private:
    ComplexMatrix m_;
};

}  // namespace cqexp
