#pragma once

#include <vector>

#include "cqexp/channel.hpp"

namespace cqexp {

/// Concavity/monotonicity diagnostics of s -> E_q(pi, s) on a grid.
struct ConcavityReport {
    std::vector<double> s_grid;
    std::vector<double> values;
    /// Interpolation-gap form of the second difference: on a uniform grid
    /// entry k equals v_{k-1} - 2 v_k + v_{k+1}; on nonuniform grids it is
    /// scaled so concavity still means <= 0. Size is grid size minus two.
    std::vector<double> second_differences;
    double max_second_difference = 0.0;
    /// max_k (v_k - v_{k+1}); positive means a monotonicity violation.
    double monotone_violation = 0.0;
};

/// E_q(pi, s) = -log tr[(sum_i pi_i S_i^{1/(1+s)})^{1+s}] in nats.
/// Defined here for s in (-1, 1].
double eq_aux(const Channel& ch, const Prior& prior, double s);

/// dE_q/ds by Richardson-extrapolated finite differences (one-sided at the
/// ends of the evaluable range).
double eq_derivative(const Channel& ch, const Prior& prior, double s);

/// Classical auxiliary function -log sum_j (sum_i pi_i p_i(j)^{1/(1+s)})^{1+s}
/// of a row-stochastic transition matrix, computed entirely with scalars.
/// Oracle for channels of simultaneously diagonal states.
double gallager_e0_scalar(const std::vector<std::vector<double>>& transition,
                          const Prior& prior, double s);

/// Evaluate E_q on a strictly increasing grid in (-1, 1] (>= 3 points).
ConcavityReport concavity_scan(const Channel& ch, const Prior& prior,
                               const std::vector<double>& s_grid);

}  // namespace cqexp
