#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace cqexp {

/// splitmix64 step; derives independent per-instance seeds from
/// (campaign seed, instance counter) so instances can be replayed and
/// evaluated in any order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter);

/// Deterministic random source. The distributions are hand-rolled on top of
/// mt19937_64 so streams do not depend on the standard library's
/// implementation-defined distribution algorithms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform on {0, ..., n-1}; n >= 1.
    std::uint64_t integer(std::uint64_t n);
    /// Standard normal via Box-Muller.
    double normal();
    /// Complex with independent standard-normal real and imaginary parts.
    std::complex<double> complex_normal();
    /// Flat Dirichlet (uniform on the simplex), n >= 1.
    std::vector<double> dirichlet(std::size_t n);

  private:
    std::mt19937_64 gen_;
};

}  // namespace cqexp
