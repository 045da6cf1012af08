#include <doctest.h>

#include <cmath>

#include "cqexp/coding.hpp"
#include "cqexp/errors.hpp"
#include "cqexp/spectral.hpp"
#include "test_support.hpp"

using namespace cqexp;
using namespace cqexp::testing;

TEST_SUITE("coding") {

TEST_CASE("codeword states") {
    Rng rng(301);
    const Channel ch = random_channel(rng, 2, 2);

    // n = 1: the channel state itself
    CHECK(max_abs_diff(codeword_state(ch, {1}).hermitian().matrix(),
                       ch.state(1).hermitian().matrix()) == 0.0);

    // diagonal channel: tensor product entries are scalar products
    const Channel bsc = bsc_channel(0.1);
    const DensityMatrix s00 = codeword_state(bsc, {0, 0});
    REQUIRE(s00.dim() == 4);
    const double p0[2] = {0.9, 0.1};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            CHECK(s00.hermitian()(2 * x + y, 2 * x + y).real() ==
                  doctest::Approx(p0[x] * p0[y]).epsilon(1e-12));

    // trace multiplicativity
    const DensityMatrix s3 = codeword_state(ch, {0, 1, 0});
    CHECK(s3.hermitian().trace_real() == doctest::Approx(1.0).epsilon(1e-9));

    // symbol and cap validation
    CHECK_THROWS_AS(codeword_state(ch, {0, 2}), ValidationError);
    CHECK_THROWS_AS(codeword_state(ch, std::vector<int>(20, 0)), ValidationError);
}

TEST_CASE("codebook validation") {
    Codebook cb;
    cb.n = 2;
    cb.words = {{0, 1}, {1, 0}};
    CHECK_NOTHROW(cb.validate(2));
    cb.words.push_back({1});
    CHECK_THROWS_AS(cb.validate(2), ValidationError);
    cb.words.back() = {1, 5};
    CHECK_THROWS_AS(cb.validate(2), ValidationError);
}

TEST_CASE("SRM on orthogonal pure states yields the projectors") {
    const Channel ch = orthogonal_qubit_channel();
    const std::vector<DensityMatrix> states{ch.state(0), ch.state(1)};
    const POVM povm = square_root_measurement(states);
    for (int j = 0; j < 2; ++j)
        CHECK(max_abs_diff(povm.element(j).matrix(),
                           states[j].hermitian().matrix()) <= 1e-10);
    const ErrorProfile profile = error_profile(states, povm);
    CHECK(profile.average <= 1e-12);
    CHECK(profile.max <= 1e-12);
}

TEST_CASE("SRM on identical states splits the support evenly") {
    Rng rng(307);
    const DensityMatrix rho = random_density(rng, 3);
    const std::vector<DensityMatrix> states{rho, rho};
    const POVM povm = square_root_measurement(states);
    const HermitianMatrix projector = spectral_pow(rho.hermitian(), 0.0, true);
    for (int j = 0; j < 2; ++j)
        CHECK(max_abs_diff(povm.element(j).matrix(),
                           (0.5 * projector).matrix()) <= 1e-9);
    const ErrorProfile profile = error_profile(states, povm);
    CHECK(profile.average == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("SRM completeness on random states") {
    Rng rng(311);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<DensityMatrix> states;
        for (int j = 0; j < 3; ++j) states.push_back(random_density(rng, 4));
        const POVM povm = square_root_measurement(states);  // ctor validates
        ComplexMatrix total(4);
        for (int j = 0; j < 3; ++j) total += povm.element(j).matrix();
        ComplexMatrix t(4);
        for (const auto& s : states) t += s.hermitian().matrix();
        const HermitianMatrix projector = spectral_pow(HermitianMatrix(t), 0.0, true);
        CHECK(max_abs_diff(total, projector.matrix()) <= 1e-9);
        const ErrorProfile profile = error_profile(states, povm);
        for (double p : profile.per_word) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("diagonal channel matches the scalar SRM formula") {
    // P_j = 1 - sum_x p_j(x)^2 / sum_k p_k(x) for diagonal states
    Rng rng(313);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<std::vector<double>> probs;
        std::vector<DensityMatrix> states;
        for (int j = 0; j < 3; ++j) {
            auto p = rng.dirichlet(4);
            probs.push_back(p);
            states.push_back(DensityMatrix::diagonal(p));
        }
        const POVM povm = square_root_measurement(states);
        const ErrorProfile profile = error_profile(states, povm);
        for (int j = 0; j < 3; ++j) {
            double hit = 0.0;
            for (int x = 0; x < 4; ++x) {
                double total = 0.0;
                for (int k = 0; k < 3; ++k) total += probs[k][x];
                hit += probs[j][x] * probs[j][x] / total;
            }
            CHECK(std::abs(profile.per_word[j] - (1.0 - hit)) <= 1e-10);
        }
    }
}

TEST_CASE("permuting the codewords permutes the error profile") {
    Rng rng(317);
    std::vector<DensityMatrix> states;
    for (int j = 0; j < 3; ++j) states.push_back(random_density(rng, 3));
    const ErrorProfile base = error_profile(states, square_root_measurement(states));
    std::vector<DensityMatrix> permuted{states[2], states[0], states[1]};
    const ErrorProfile perm = error_profile(permuted, square_root_measurement(permuted));
    CHECK(perm.per_word[0] == doctest::Approx(base.per_word[2]).epsilon(1e-12));
    CHECK(perm.per_word[1] == doctest::Approx(base.per_word[0]).epsilon(1e-12));
    CHECK(perm.per_word[2] == doctest::Approx(base.per_word[1]).epsilon(1e-12));
    CHECK(perm.average == doctest::Approx(base.average).epsilon(1e-12));
}

TEST_CASE("single-word code never errs") {
    Rng rng(331);
    const Channel ch = random_channel(rng, 2, 2);
    const TrialResult r = random_code_trial(ch, Prior::uniform(2), 2, 1, 5, 17);
    CHECK(r.mean_avg_err <= 1e-12);
    CHECK(std::isinf(r.exponent_proxy));
}

TEST_CASE("orthogonal channel, n=1, M=2: collision rate 1/4") {
    // exhaustive oracle: 4 equiprobable codebooks, identical pairs err 1/2
    const Channel ch = orthogonal_qubit_channel();
    const TrialResult r = random_code_trial(ch, Prior::uniform(2), 1, 2, 4000, 99);
    CHECK(std::abs(r.mean_avg_err - 0.25) <= 0.02);
    CHECK(r.rate_nats == doctest::Approx(std::log(2.0)));
}

TEST_CASE("deterministic for a fixed seed") {
    const Channel ch = bsc_channel(0.1);
    const TrialResult r1 = random_code_trial(ch, Prior::uniform(2), 2, 2, 50, 5);
    const TrialResult r2 = random_code_trial(ch, Prior::uniform(2), 2, 2, 50, 5);
    CHECK(r1.mean_avg_err == r2.mean_avg_err);
    CHECK(r1.mean_max_err == r2.mean_max_err);
}

TEST_CASE("error decays with block length at fixed rate") {
    // R = ln(2)/2 per symbol: M = 2, 4, 8 at n = 2, 4, 6
    const Channel ch = bsc_channel(0.1);
    const Prior prior = Prior::uniform(2);
    double previous = 1.0;
    for (int n : {2, 4, 6}) {
        const int words = 1 << (n / 2);
        const TrialResult r = random_code_trial(ch, prior, n, words, 400, 2024);
        CHECK(r.mean_avg_err <= previous + 1e-9);
        previous = r.mean_avg_err;
    }
}

}  // TEST_SUITE
