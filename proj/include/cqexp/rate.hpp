#pragma once

#include <cstdint>
#include <vector>

#include "cqexp/channel.hpp"

namespace cqexp {

/// One point of the random-coding bound: E_r at rate R (nats/symbol) with
/// the maximizing s and prior found.
struct RateExponentPoint {
    double rate;
    double s_star;
    Prior prior_star;
    double value;
};

struct SupResult {
    double s_star;
    double value;
};

/// max over s in [0,1] of E_q(pi, s) - s R by golden-section search
/// (unimodal: E_q is concave there), s-tolerance 1e-8. A nonpositive
/// supremum collapses to (s=0, value=0).
SupResult sup_over_s(const Channel& ch, const Prior& prior, double rate);

/// Multi-start projected-ascent maximization over the prior simplex; the
/// start set is uniform + vertices + seeded Dirichlet draws. Deterministic
/// for a fixed seed.
RateExponentPoint max_over_prior(const Channel& ch, double rate,
                                 std::uint64_t seed = 0, int starts = 20);

/// E_r over an increasing rate grid.
std::vector<RateExponentPoint> curve(const Channel& ch,
                                     const std::vector<double>& rate_grid,
                                     std::uint64_t seed = 0);

/// max over priors of the Holevo quantity, by the same ascent.
double capacity_estimate(const Channel& ch, std::uint64_t seed = 0);

/// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v);

}  // namespace cqexp
