#pragma once

#include <cstddef>

namespace cqexp {

/// Numeric knobs shared across the library. Every field can be overridden
/// through an environment variable (read once, on first use):
///
///   CQEXP_EIGEN_FLOOR   eigen_floor
///   CQEXP_GAP_TOL       gap_tolerance
///   CQEXP_FD_STEP       fd_step
///   CQEXP_JACOBI_CAP    jacobi_rotation_factor
///   CQEXP_DIM_CAP       dim_cap
struct Config {
    /// |lambda| at or below this counts as off-support; eigenvalues below
    /// -eigen_floor are hard errors, never clipped.
    double eigen_floor = 1e-12;
    /// tau in "gap >= -tau * scale means the inequality holds".
    double gap_tolerance = 1e-9;
    /// Base step for finite-difference derivatives in s.
    double fd_step = 1e-4;
    /// Jacobi stops once max off-diagonal magnitude <= this times the
    /// initial matrix scale.
    double jacobi_off_tolerance = 1e-13;
    /// Rotation cap = factor * dim^2; exceeding it signals pathological input.
    std::size_t jacobi_rotation_factor = 100;
    /// Largest tensor-product dimension the coding simulator will build.
    std::size_t dim_cap = 16384;

    static const Config& get();
};

}  // namespace cqexp
