#include <doctest.h>

#include <cmath>

#include "cqexp/config.hpp"
#include "cqexp/errors.hpp"
#include "cqexp/inequality.hpp"
#include "test_support.hpp"

using namespace cqexp;
using namespace cqexp::testing;
using nlohmann::json;

namespace {

// commuting-case oracle computed entirely with scalars: channel states are
// diagonal, so every operator in the theorem is diagonal too
void diagonal_theorem_oracle(const FuzzInstance& inst, double* lhs, double* rhs) {
    const std::size_t a = inst.channel.alphabet_size();
    const std::size_t d = inst.channel.dim();
    const double gamma = 1.0 / (1.0 + inst.s);
    *lhs = 0.0;
    *rhs = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double mix = 0.0, t1 = 0.0, b = 0.0;
        for (std::size_t i = 0; i < a; ++i) {
            const double aij =
                std::pow(inst.channel.state(i).hermitian()(j, j).real(), gamma);
            const double lg = std::log(aij);
            mix += inst.prior[i] * aij;
            t1 += inst.prior[i] * aij * lg * lg;
            b += inst.prior[i] * aij * lg;
        }
        *lhs += std::pow(mix, inst.s) * t1;
        *rhs += std::pow(mix, inst.s - 1.0) * b * b;
    }
}

}  // namespace

TEST_SUITE("inequality") {

TEST_CASE("pair classification") {
    const auto anti = monotone_pair_check({"pow:0.5", "inv", {0.0, 1e300}}, 2000, 1);
    CHECK(anti.cls == PairClass::antimonotone);
    CHECK(anti.max_product <= 0.0);

    const auto mono = monotone_pair_check({"identity", "identity", {0.0, 1e300}}, 2000, 1);
    CHECK(mono.cls == PairClass::monotone);
    CHECK(mono.min_product >= 0.0);

    // (x^2, x) straddling zero is neither
    const auto neither = monotone_pair_check({"square", "identity", {-1.0, 1.0}}, 2000, 1);
    CHECK(neither.cls == PairClass::neither);
    CHECK(neither.min_product < 0.0);
    CHECK(neither.max_product > 0.0);

    CHECK_THROWS_AS(lookup_scalar_fn("cosh"), ValidationError);
}

TEST_CASE("trace pair gap equality cases") {
    Rng rng(101);
    const MonotonePairSpec spec{"pow:0.7", "inv", {0.0, 1e300}};
    const HermitianMatrix a = random_psd(rng, 4);

    // X = I: both traces are tr f(A)g(A)
    const auto with_identity = trace_pair_gap(spec, a, HermitianMatrix::identity(4));
    CHECK(std::abs(with_identity.gap) <= 1e-11 * with_identity.scale);

    // A = I: f(A), g(A) scalar multiples of the identity
    const HermitianMatrix x = random_hermitian(rng, 4);
    const auto with_scalar_a = trace_pair_gap(spec, HermitianMatrix::identity(4), x);
    CHECK(std::abs(with_scalar_a.gap) <= 1e-11 * with_scalar_a.scale);
}

TEST_CASE("antimonotone trace inequality on random instances") {
    Rng rng(103);
    for (int rep = 0; rep < 40; ++rep) {
        const HermitianMatrix a = random_psd(rng, 4);
        const HermitianMatrix x = random_hermitian(rng, 4);
        const auto rep_out = trace_pair_gap({"pow:0.7", "inv", {0.0, 1e300}}, a, x);
        CHECK(rep_out.gap >= -1e-9 * rep_out.scale);
        CHECK(rep_out.imag_residue <= 1e-10 * rep_out.scale);
    }
}

TEST_CASE("monotone orientation holds as well") {
    Rng rng(107);
    for (int rep = 0; rep < 20; ++rep) {
        const HermitianMatrix a = random_psd(rng, 3);
        const HermitianMatrix x = random_hermitian(rng, 3);
        const auto r = trace_pair_gap({"pow:2", "identity", {0.0, 1e300}}, a, x);
        CHECK(r.gap >= -1e-9 * r.scale);
    }
}

TEST_CASE("spectrum outside the pair domain is rejected") {
    const HermitianMatrix a = HermitianMatrix::diagonal({0.5, 2.0});
    CHECK_THROWS_AS(
        trace_pair_gap({"pow:0.5", "inv", {1.0, 10.0}}, a, HermitianMatrix::identity(2)),
        DomainError);
}

TEST_CASE("pair witness replays bit-for-bit") {
    Rng rng(109);
    const HermitianMatrix a = random_psd(rng, 3);
    const HermitianMatrix x = random_hermitian(rng, 3);
    const auto rep = trace_pair_gap({"pow:0.7", "inv", {0.0, 1e300}}, a, x);
    // through a full serialize/parse cycle
    const json round_tripped = json::parse(rep.witness.dump());
    const ReplayResult replay = replay_witness(round_tripped);
    CHECK(replay.exact_match);
    CHECK(replay.report.gap == rep.gap);
}

TEST_CASE("jensen gap equality case: single isometry") {
    Rng rng(113);
    const HermitianMatrix x = random_hermitian(rng, 4);
    const HermitianMatrix g = jensen_gap({ComplexMatrix::identity(4)}, {x});
    CHECK(g.max_abs() <= 1e-12);
}

TEST_CASE("jensen gap with commuting scalar isometries") {
    Rng rng(127);
    const HermitianMatrix x = random_hermitian(rng, 3);
    ComplexMatrix c0 = ComplexMatrix::identity(3);
    ComplexMatrix c1 = ComplexMatrix::identity(3);
    c0 *= cxd{std::sqrt(0.3), 0.0};
    c1 *= cxd{std::sqrt(0.7), 0.0};
    const HermitianMatrix g = jensen_gap({c0, c1}, {x, x});
    CHECK(eigh(g).eigenvalues.front() >= -1e-12);
}

TEST_CASE("jensen gap rejects a broken partition of identity") {
    Rng rng(131);
    const HermitianMatrix x = random_hermitian(rng, 3);
    ComplexMatrix half = ComplexMatrix::identity(3);
    half *= cxd{0.5, 0.0};
    CHECK_THROWS_AS(jensen_gap({half}, {x}), ValidationError);
}

TEST_CASE("jensen gap on the theorem instantiation") {
    Rng rng(137);
    const auto& jensen = evaluator_registry().at("jensen");
    for (int rep = 0; rep < 30; ++rep) {
        FuzzConfig cfg;
        cfg.seed = 1000 + rep;
        const FuzzInstance inst = make_instance(cfg, rep);
        const InequalityReport r = jensen(inst);
        CHECK(r.gap >= -1e-9 * r.scale);
    }
}

TEST_CASE("concavity trace gap equality cases") {
    Rng rng(139);
    // a = 1
    const HermitianMatrix a0 = random_psd(rng, 3);
    const auto single = concavity_trace_gap({a0}, Prior::uniform(1), 0.6);
    CHECK(std::abs(single.gap) <= 1e-11 * single.scale);

    // identical operators
    const auto identical =
        concavity_trace_gap({a0, a0, a0}, Prior::uniform(3), 0.4);
    CHECK(std::abs(identical.gap) <= 1e-10 * identical.scale);
}

TEST_CASE("two-operator symmetric case holds") {
    Rng rng(149);
    for (int rep = 0; rep < 30; ++rep) {
        const HermitianMatrix a = random_psd(rng, 3);
        const HermitianMatrix b = random_psd(rng, 3);
        const auto r = concavity_trace_gap({a, b}, Prior::uniform(2), 0.5);
        CHECK(r.gap >= -1e-9 * r.scale);
        CHECK(r.imag_residue <= 1e-10 * r.scale);
    }
}

TEST_CASE("s at or below -1 is rejected") {
    Rng rng(151);
    const HermitianMatrix a = random_psd(rng, 2);
    CHECK_THROWS_AS(concavity_trace_gap({a}, Prior::uniform(1), -1.0), DomainError);
}

TEST_CASE("formulation agreement on random channels") {
    Rng rng(157);
    for (int rep = 0; rep < 25; ++rep) {
        const Channel ch = random_channel(rng, 2 + rep % 3, 2 + rep % 4);
        const Prior prior(rng.dirichlet(ch.alphabet_size()));
        const double s = rng.uniform(0.0, 1.0);
        const InequalityReport r = eq3_trace_gap(ch, prior, s);
        REQUIRE(r.formulation_delta.has_value());
        CHECK(*r.formulation_delta <= 1e-10);
        CHECK(r.gap >= -1e-9 * r.scale);
    }
}

TEST_CASE("support restriction is flagged for singular states") {
    const InequalityReport r =
        eq3_trace_gap(orthogonal_qubit_channel(), Prior::uniform(2), 0.5);
    CHECK(r.support_restricted);
    CHECK(r.gap >= -1e-9 * r.scale);
}

TEST_CASE("proof chain links hold on fuzz instances") {
    const auto& registry = evaluator_registry();
    FuzzConfig cfg;
    cfg.seed = 4242;
    cfg.instance_count = 60;
    for (int i = 0; i < cfg.instance_count; ++i) {
        const FuzzInstance inst = make_instance(cfg, i);
        const auto theorem = registry.at("theorem")(inst);
        const auto mid = registry.at("chain-mid")(inst);
        const auto final_step = registry.at("pair-final")(inst);
        const auto jensen = registry.at("jensen")(inst);
        CHECK(jensen.gap >= -1e-9 * jensen.scale);
        CHECK(mid.gap >= -1e-9 * mid.scale);
        CHECK(final_step.gap >= -1e-9 * final_step.scale);
        CHECK(theorem.gap >= -1e-9 * theorem.scale);
        // the links share their middle quantity
        CHECK(std::abs(mid.rhs - final_step.lhs) <= 1e-9 * (1.0 + std::abs(mid.rhs)));
        CHECK(std::abs(theorem.lhs - mid.lhs) <= 1e-9 * (1.0 + std::abs(mid.lhs)));
        CHECK(std::abs(theorem.rhs - final_step.rhs) <=
              1e-9 * (1.0 + std::abs(theorem.rhs)));
    }
}

TEST_CASE("theorem fuzz: clean sweep on every assertion ensemble") {
    for (Ensemble e : {Ensemble::haar_mixed, Ensemble::diagonal, Ensemble::near_identical}) {
        FuzzConfig cfg;
        cfg.instance_count = 250;
        cfg.seed = 99;
        cfg.ensemble = e;
        cfg.s_grid = 11;
        const FuzzSummary summary = fuzz("theorem", cfg);
        CAPTURE(to_string(e));
        CHECK(summary.instances == 250);
        CHECK(summary.violations == 0);
        CHECK(summary.evaluation_errors == 0);
        CHECK(!summary.exploratory);
    }
}

TEST_CASE("fuzz is deterministic for a fixed seed") {
    FuzzConfig cfg;
    cfg.instance_count = 50;
    cfg.seed = 7;
    const FuzzSummary s1 = fuzz("theorem", cfg);
    const FuzzSummary s2 = fuzz("theorem", cfg);
    CHECK(s1.min_gap == s2.min_gap);
    CHECK(s1.worst.lhs == s2.worst.lhs);
    CHECK(s1.worst.witness == s2.worst.witness);
}

TEST_CASE("diagonal ensemble matches the commuting scalar oracle") {
    const auto& theorem = evaluator_registry().at("theorem");
    FuzzConfig cfg;
    cfg.ensemble = Ensemble::diagonal;
    cfg.seed = 321;
    for (int i = 0; i < 40; ++i) {
        const FuzzInstance inst = make_instance(cfg, i);
        const InequalityReport r = theorem(inst);
        double lhs = 0.0, rhs = 0.0;
        diagonal_theorem_oracle(inst, &lhs, &rhs);
        CHECK(std::abs(r.lhs - lhs) <= 1e-10 * r.scale);
        CHECK(std::abs(r.rhs - rhs) <= 1e-10 * r.scale);
        CHECK(std::abs(r.gap - (lhs - rhs)) <= 1e-10 * r.scale);
    }
}

TEST_CASE("open-region fuzz is exploratory and replayable") {
    FuzzConfig cfg;
    cfg.instance_count = 40;
    cfg.seed = 11;
    cfg.s_min = -0.9;
    cfg.s_max = 0.0;
    const FuzzSummary summary = fuzz("theorem", cfg);
    CHECK(summary.exploratory);
    CHECK(summary.instances == 40);
    // the worst witness replays exactly, whatever its sign
    const json w = json::parse(summary.worst.witness.dump());
    const ReplayResult replay = replay_witness(w);
    CHECK(replay.exact_match);
    CHECK(replay.report.gap == summary.worst.gap);
}

TEST_CASE("fuzz witness of any instance replays bit-for-bit") {
    FuzzConfig cfg;
    cfg.instance_count = 25;
    cfg.seed = 1234;
    for (const char* id : {"theorem", "eq3", "jensen", "chain-mid", "pair-final"}) {
        const FuzzSummary summary = fuzz(id, cfg);
        CAPTURE(id);
        const ReplayResult replay = replay_witness(json::parse(summary.worst.witness.dump()));
        CHECK(replay.exact_match);
    }
}

TEST_CASE("shrinking reduces a violating witness") {
    // synthetic always-false inequality exercises the shrink pass
    InequalityEvaluator always_violates = [](const FuzzInstance& inst) {
        InequalityReport rep;
        rep.inequality_id = "test:always-false";
        rep.lhs = -1.0;
        rep.rhs = static_cast<double>(inst.channel.alphabet_size() + inst.channel.dim());
        rep.gap = rep.lhs - rep.rhs;
        rep.scale = 1.0 + std::abs(rep.lhs) + std::abs(rep.rhs);
        rep.witness = nlohmann::json{{"a", inst.channel.alphabet_size()},
                                     {"d", inst.channel.dim()}};
        return rep;
    };
    FuzzConfig cfg;
    cfg.instance_count = 5;
    cfg.seed = 2;
    cfg.a_min = 3;
    cfg.a_max = 4;
    cfg.d_min = 4;
    cfg.d_max = 6;
    const FuzzSummary summary = fuzz_with(always_violates, cfg, "test:always-false");
    CHECK(summary.violations == 5);
    // the shrink pass drives the witness to the smallest violating shape
    CHECK(summary.worst.witness.at("a").get<int>() == 1);
    CHECK(summary.worst.witness.at("d").get<int>() == 1);
}

TEST_CASE("unknown inequality id") {
    FuzzConfig cfg;
    cfg.instance_count = 1;
    CHECK_THROWS_AS(fuzz("no-such-inequality", cfg), ValidationError);
}

}  // TEST_SUITE
