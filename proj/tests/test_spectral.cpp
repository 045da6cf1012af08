#include <doctest.h>

#include <cmath>

#include "cqexp/errors.hpp"
#include "cqexp/spectral.hpp"
#include "test_support.hpp"

using namespace cqexp;
using namespace cqexp::testing;

namespace {

ComplexMatrix reconstruct(const SpectralDecomposition& dec) {
    const std::size_t d = dec.eigenvalues.size();
    ComplexMatrix w = dec.eigenvectors;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) w(i, j) *= dec.eigenvalues[j];
    return mul(w, dec.eigenvectors.adjoint());
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("eigh on diagonal input sorts eigenvalues") {
    const auto dec = eigh(HermitianMatrix::diagonal({3.0, 1.0, 2.0}));
    REQUIRE(dec.eigenvalues.size() == 3);
    CHECK(dec.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dec.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(dec.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("eigh of the symmetry matrix") {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    const auto dec = eigh(HermitianMatrix(std::move(m)));
    CHECK(dec.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(dec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigh reconstruction and orthonormality on random input") {
    Rng rng(23);
    for (std::size_t d : {2u, 3u, 5u, 8u, 17u, 40u}) {
        const HermitianMatrix a = random_hermitian(rng, d);
        const auto dec = eigh(a);
        const double scale = 1.0 + a.max_abs();
        CHECK(max_abs_diff(reconstruct(dec), a.matrix()) <= 1e-9 * scale);
        const ComplexMatrix gram = mul(dec.eigenvectors.adjoint(), dec.eigenvectors);
        CHECK(max_abs_diff(gram, ComplexMatrix::identity(d)) <= 1e-10);
        for (std::size_t i = 1; i < d; ++i)
            CHECK(dec.eigenvalues[i] >= dec.eigenvalues[i - 1]);
    }
}

TEST_CASE("eigh is deterministic for identical input") {
    Rng rng(5);
    const HermitianMatrix a = random_hermitian(rng, 6);
    const auto d1 = eigh(a);
    const auto d2 = eigh(a);
    for (std::size_t i = 0; i < 6; ++i) CHECK(d1.eigenvalues[i] == d2.eigenvalues[i]);
    CHECK(max_abs_diff(d1.eigenvectors, d2.eigenvectors) == 0.0);
}

TEST_CASE("unitary covariance of the spectrum") {
    Rng rng(31);
    for (int rep = 0; rep < 5; ++rep) {
        const std::size_t d = 4;
        const HermitianMatrix a = random_hermitian(rng, d);
        const ComplexMatrix u = random_unitary(rng, d);
        const HermitianMatrix rotated{mul(u, mul(a.matrix(), u.adjoint()))};
        const auto ea = eigh(a).eigenvalues;
        const auto er = eigh(rotated).eigenvalues;
        for (std::size_t i = 0; i < d; ++i)
            CHECK(std::abs(ea[i] - er[i]) <= 1e-9 * (1.0 + std::abs(ea[i])));
    }
}

TEST_CASE("apply_spectral_fn basics") {
    const HermitianMatrix a = HermitianMatrix::diagonal({4.0, 1.0});
    const HermitianMatrix root = apply_spectral_fn(a, [](double x) { return std::sqrt(x); });
    CHECK(root(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(root(1, 1).real() == doctest::Approx(1.0).epsilon(1e-14));

    const HermitianMatrix log_id =
        apply_spectral_fn(HermitianMatrix::identity(3), [](double x) { return std::log(x); });
    CHECK(log_id.max_abs() <= 1e-14);

    // scalar oracle: x^{1/(1+s)} at s = 1 is the square root
    const HermitianMatrix half = HermitianMatrix::diagonal({0.9, 0.1});
    const HermitianMatrix powered = spectral_pow(half, 1.0 / (1.0 + 1.0));
    CHECK(powered(0, 0).real() == doctest::Approx(std::sqrt(0.9)).epsilon(1e-14));
    CHECK(powered(1, 1).real() == doctest::Approx(std::sqrt(0.1)).epsilon(1e-14));
}

TEST_CASE("identity function reproduces the matrix") {
    Rng rng(77);
    const HermitianMatrix a = random_hermitian(rng, 5);
    const HermitianMatrix same = apply_spectral_fn(a, [](double x) { return x; });
    CHECK(max_abs_diff(same.matrix(), a.matrix()) <= 1e-10 * (1.0 + a.max_abs()));
}

TEST_CASE("power composition (A^p)^q = A^{pq} on PSD input") {
    Rng rng(13);
    for (int rep = 0; rep < 4; ++rep) {
        const HermitianMatrix a = random_psd(rng, 4);
        for (auto [p, q] : {std::pair{0.5, 2.0}, {1.5, 0.25}, {2.0, 0.5}, {0.3, 3.0}}) {
            const HermitianMatrix lhs = spectral_pow(spectral_pow(a, p), q);
            const HermitianMatrix rhs = spectral_pow(a, p * q);
            CHECK(max_abs_diff(lhs.matrix(), rhs.matrix()) <= 1e-9 * (1.0 + rhs.max_abs()));
        }
    }
}

TEST_CASE("matrix entropy") {
    CHECK(matrix_entropy(HermitianMatrix::diagonal({1.0, 0.0})).max_abs() <= 1e-14);

    const HermitianMatrix half_mixed = matrix_entropy(
        HermitianMatrix::diagonal({0.5, 0.5}));
    CHECK(half_mixed(0, 0).real() == doctest::Approx(std::log(2.0) / 2).epsilon(1e-13));
    CHECK(half_mixed(1, 1).real() == doctest::Approx(std::log(2.0) / 2).epsilon(1e-13));

    // scalar oracle -x ln x
    const HermitianMatrix h = matrix_entropy(HermitianMatrix::diagonal({0.9, 0.1}));
    CHECK(h(0, 0).real() == doctest::Approx(-0.9 * std::log(0.9)).epsilon(1e-13));
    CHECK(h(1, 1).real() == doctest::Approx(-0.1 * std::log(0.1)).epsilon(1e-13));
}

TEST_CASE("domain violations carry the offending eigenvalue") {
    const HermitianMatrix neg = HermitianMatrix::diagonal({1.0, -0.5});
    CHECK_THROWS_AS(spectral_log(neg), DomainError);
    CHECK_THROWS_AS(matrix_entropy(neg), DomainError);
    try {
        spectral_log(neg);
    } catch (const DomainError& e) {
        CHECK(e.eigenvalue == doctest::Approx(-0.5));
    }

    // log of a singular matrix requires the support restriction
    const HermitianMatrix singular = HermitianMatrix::diagonal({1.0, 0.0});
    CHECK_THROWS_AS(spectral_log(singular), DomainError);
    CHECK_NOTHROW(spectral_log(singular, true));
    // tiny negatives clip instead of erroring
    const HermitianMatrix tiny = HermitianMatrix::diagonal({1.0, -1e-13});
    CHECK_NOTHROW(spectral_pow(tiny, 0.5));
}

TEST_CASE("support projector via zeroth power") {
    const HermitianMatrix a = HermitianMatrix::diagonal({2.0, 0.0, 0.5});
    const HermitianMatrix proj = spectral_pow(a, 0.0, true);
    CHECK(proj(0, 0).real() == doctest::Approx(1.0));
    CHECK(proj(1, 1).real() == doctest::Approx(0.0));
    CHECK(proj(2, 2).real() == doctest::Approx(1.0));
}

TEST_CASE("non-Hermitian input is rejected") {
    ComplexMatrix m(2);
    m(0, 1) = cxd{1.0, 0.0};
    m(1, 0) = cxd{0.5, 0.0};
    CHECK_THROWS_AS(HermitianMatrix{std::move(m)}, ValidationError);
}

}  // TEST_SUITE
