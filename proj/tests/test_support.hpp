#pragma once

// Shared generators for the test suites. Everything is seeded and
// deterministic.

#include <vector>

#include "cqexp/channel.hpp"
#include "cqexp/matrix.hpp"
#include "cqexp/rng.hpp"
#include "cqexp/spectral.hpp"

namespace cqexp::testing {

inline ComplexMatrix random_complex(Rng& rng, std::size_t d) {
    ComplexMatrix g(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
    return g;
}

inline HermitianMatrix random_hermitian(Rng& rng, std::size_t d) {
    ComplexMatrix g = random_complex(rng, d);
    ComplexMatrix h = g;
    h += g.adjoint();
    h *= cxd{0.5, 0.0};
    return HermitianMatrix(std::move(h));
}

inline HermitianMatrix random_psd(Rng& rng, std::size_t d) {
    ComplexMatrix g = random_complex(rng, d);
    return HermitianMatrix(mul(g, g.adjoint()));
}

inline DensityMatrix random_density(Rng& rng, std::size_t d) {
    ComplexMatrix g = random_complex(rng, d);
    ComplexMatrix s = mul(g, g.adjoint());
    s *= cxd{1.0 / s.trace().real(), 0.0};
    return DensityMatrix(HermitianMatrix(std::move(s)));
}

inline ComplexMatrix random_unitary(Rng& rng, std::size_t d) {
    // eigenvector matrix of a random Hermitian is unitary
    return eigh(random_hermitian(rng, d)).eigenvectors;
}

inline Channel random_channel(Rng& rng, std::size_t a, std::size_t d) {
    std::vector<DensityMatrix> states;
    states.reserve(a);
    for (std::size_t i = 0; i < a; ++i) states.push_back(random_density(rng, d));
    return Channel(std::move(states));
}

/// Orthogonal pure qubit channel: S_0 = |0><0|, S_1 = |1><1|.
inline Channel orthogonal_qubit_channel() {
    return Channel({DensityMatrix::pure({cxd{1.0, 0.0}, cxd{0.0, 0.0}}),
                    DensityMatrix::pure({cxd{0.0, 0.0}, cxd{1.0, 0.0}})});
}

/// Diagonal channel mirroring a binary symmetric channel with flip p.
inline Channel bsc_channel(double p) {
    return Channel({DensityMatrix::diagonal({1.0 - p, p}),
                    DensityMatrix::diagonal({p, 1.0 - p})});
}

}  // namespace cqexp::testing
