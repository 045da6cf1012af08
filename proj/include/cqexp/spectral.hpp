#pragma once

#include <functional>
#include <vector>

#include "cqexp/matrix.hpp"

namespace cqexp {

using ScalarFn = std::function<double(double)>;

/// Eigensystem of a Hermitian matrix: eigenvalues ascending, eigenvector
/// columns orthonormal, A = V diag(lambda) V^dagger.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    /// V f(diag) V^dagger. With support_only, |lambda| <= eigen_floor maps
    /// to 0 without consulting f. A non-finite f(lambda) is a DomainError
    /// carrying the offending eigenvalue.
    HermitianMatrix apply(const ScalarFn& f, bool support_only = false) const;
    /// sum_i f(lambda_i) under the same rules, skipping the reconstruction.
    double trace_apply(const ScalarFn& f, bool support_only = false) const;
    /// Any eigenvalue with |lambda| <= eigen_floor?
    bool has_zero_eigenvalue() const;
};

/// Cyclic complex Jacobi. Deterministic for identical input bits; throws
/// ConvergenceError past jacobi_rotation_factor * dim^2 rotations.
SpectralDecomposition eigh(const HermitianMatrix& a);

HermitianMatrix apply_spectral_fn(const HermitianMatrix& a, const ScalarFn& f,
                                  bool support_only = false);

/// PSD calculus: eigenvalues in [-eigen_floor, 0) clip to 0, below
/// -eigen_floor is a DomainError. With support_only, negative powers and log
/// act on the support and zero eigenvalues stay zero.
HermitianMatrix spectral_pow(const HermitianMatrix& a, double p, bool support_only = false);
HermitianMatrix spectral_log(const HermitianMatrix& a, bool support_only = false);
/// tr(A^p) via eigenvalues only.
double trace_spectral_pow(const HermitianMatrix& a, double p);

/// H(A) = -A log A with 0 log 0 = 0; requires eigenvalues >= -eigen_floor.
HermitianMatrix matrix_entropy(const HermitianMatrix& a);

}  // namespace cqexp
