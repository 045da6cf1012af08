#include "cqexp/rng.hpp"

#include <cmath>

namespace cqexp {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    // 53 mantissa bits -> [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::uint64_t Rng::integer(std::uint64_t n) {
    // Lemire's multiply-shift; bias is negligible for the small n used here.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * n) >> 64);
}

double Rng::normal() {
    // Box-Muller, no caching so each call consumes exactly two draws.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

std::complex<double> Rng::complex_normal() {
    double re = normal();
    double im = normal();
    return {re, im};
}

std::vector<double> Rng::dirichlet(std::size_t n) {
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) {
        double u = uniform();
        if (u <= 0.0) u = 0x1.0p-53;
        x = -std::log(u);  // Exp(1)
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

}  // namespace cqexp
