#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cqexp/channel.hpp"
#include "cqexp/spectral.hpp"

namespace cqexp {

struct Interval {
    double lo;
    double hi;
};

/// Named scalar functions usable in monotone-pair inequalities:
/// "pow:<p>", "inv", "log", "xlogx", "negxlogx", "identity", "square".
ScalarFn lookup_scalar_fn(const std::string& name);

/// A pair (f, g) of scalar functions on a real interval, candidates for a
/// Bourin-type trace inequality.
struct MonotonePairSpec {
    std::string f_name;
    std::string g_name;
    Interval domain{0.0, 1e300};  // "(0, inf)" up to the sampling window
};

enum class PairClass { monotone, antimonotone, neither };
const char* to_string(PairClass c);

struct PairCheckResult {
    PairClass cls;
    /// min / max over sampled (a,b) of (f(a)-f(b))(g(a)-g(b)).
    double min_product;
    double max_product;
};

/// Classify the pair by sampling; the sampling window is the spec domain
/// truncated to [1e-9, 1e3].
PairCheckResult monotone_pair_check(const MonotonePairSpec& spec,
                                    int sample_count, std::uint64_t seed);

/// One checked inequality instance. gap = lhs - rhs, oriented so that
/// gap >= -tau*scale means "holds"; scale = 1 + |lhs| + |rhs|.
struct InequalityReport {
    std::string inequality_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double scale = 1.0;
    /// Largest |imaginary part| seen among the traces involved.
    double imag_residue = 0.0;
    /// Some operator had to be restricted to its support.
    bool support_restricted = false;
    /// |gap - gap via the other formulation|, when two routes exist.
    std::optional<double> formulation_delta;
    /// Replayable instance (channel schema + s/prior/seed/inequality).
    nlohmann::json witness;

    bool holds(double tau) const { return gap >= -tau * scale; }
};

/// tr[f(A) X g(A) X] vs tr[f(A) g(A) X^2], oriented by the pair's sampled
/// classification (monotone: lhs = tr[f g X^2]; antimonotone: reversed;
/// "neither" pairs keep the monotone orientation and are labelled as such).
/// The spectrum of A must lie inside spec.domain.
InequalityReport trace_pair_gap(const MonotonePairSpec& spec,
                                const HermitianMatrix& a,
                                const HermitianMatrix& x);

/// sum_i C_i^dagger X_i^2 C_i - (sum_i C_i^dagger X_i C_i)^2, PSD by the
/// operator Jensen inequality. Requires ||sum C_i^dagger C_i - I||_max <= 1e-8.
HermitianMatrix jensen_gap(const std::vector<ComplexMatrix>& c_list,
                           const std::vector<HermitianMatrix>& x_list);

/// tr[(sum pi_k A_k)^s sum_i pi_i A_i (log A_i)^2]
///   - tr[(sum pi_k A_k)^{s-1} (sum_i pi_i A_i log A_i)^2]  for PSD A_i,
/// s > -1. Singular operators are handled on their support and flagged.
InequalityReport concavity_trace_gap(const std::vector<HermitianMatrix>& a_list,
                                     const Prior& prior, double s);

/// Same quantity entered through density matrices S_i: substitutes
/// A_i = S_i^{1/(1+s)} and the matrix entropy H, then cross-checks the two
/// formulations against each other (recorded in formulation_delta; a
/// disagreement above 1e-10 * scale is an Error).
InequalityReport eq3_trace_gap(const Channel& ch, const Prior& prior, double s);

enum class Ensemble { haar_mixed, rank_deficient, diagonal, near_identical };
Ensemble ensemble_from_string(const std::string& name);
const char* to_string(Ensemble e);

struct FuzzConfig {
    int a_min = 1, a_max = 4;
    int d_min = 2, d_max = 6;
    double s_min = 0.0, s_max = 1.0;
    /// 0 draws s uniformly from [s_min, s_max]; k > 0 draws from the k-point
    /// uniform grid over the same interval.
    int s_grid = 0;
    int instance_count = 1000;
    std::uint64_t seed = 0;
    Ensemble ensemble = Ensemble::haar_mixed;
};

/// One deterministic fuzz draw: a channel, a prior and an s value.
struct FuzzInstance {
    Channel channel;
    Prior prior;
    double s;
    std::uint64_t campaign_seed;
    std::uint64_t index;
};

FuzzInstance make_instance(const FuzzConfig& cfg, std::uint64_t index);

using InequalityEvaluator = std::function<InequalityReport(const FuzzInstance&)>;

/// Built-in evaluators: "theorem", "eq3", "jensen", "chain-mid", "pair-final".
const std::map<std::string, InequalityEvaluator>& evaluator_registry();

struct FuzzSummary {
    std::string inequality_id;
    int instances = 0;
    int violations = 0;
    int evaluation_errors = 0;
    double min_gap = 0.0;
    /// Instance achieving min_gap; shrunk when it violates.
    InequalityReport worst;
    /// s_min < 0: results are evidence only, never a pass/fail claim.
    bool exploratory = false;
};

FuzzSummary fuzz(const std::string& inequality_id, const FuzzConfig& cfg);
FuzzSummary fuzz_with(const InequalityEvaluator& eval, const FuzzConfig& cfg,
                      const std::string& inequality_id);

/// Re-evaluate a serialized witness; exact_match reports whether lhs/rhs
/// reproduced bit-for-bit.
struct ReplayResult {
    InequalityReport report;
    bool exact_match;
};
ReplayResult replay_witness(const nlohmann::json& witness);

}  // namespace cqexp
