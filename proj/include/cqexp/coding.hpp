#pragma once

#include <cstdint>
#include <vector>

#include "cqexp/channel.hpp"

namespace cqexp {

/// M codewords of length n over the input alphabet {0..a-1}.
struct Codebook {
    int n = 1;
    std::vector<std::vector<int>> words;

    std::size_t size() const { return words.size(); }
    /// Checks M >= 1, uniform word length n and symbols < alphabet_size.
    void validate(std::size_t alphabet_size) const;
};

/// Deterministic random codebook: symbols i.i.d. from the prior.
Codebook random_codebook(const Prior& prior, int n, int codebook_size, std::uint64_t seed);

/// Measurement {X_j} with sum X_j <= I. Construction validates eigenvalue
/// positivity (>= -1e-10) and completeness on the span of the inputs
/// (residual <= 1e-8 against the support projector).
class POVM {
  public:
    POVM(std::vector<HermitianMatrix> elements, const HermitianMatrix& support_projector);
    std::size_t size() const { return elements_.size(); }
    const HermitianMatrix& element(std::size_t j) const { return elements_[j]; }

  private:
    std::vector<HermitianMatrix> elements_;
};

/// Per-word error probabilities P_j = 1 - tr S_{w^j} X_j and their
/// average / maximum.
struct ErrorProfile {
    std::vector<double> per_word;
    double average = 0.0;
    double max = 0.0;
};

/// S_w = S_{w_1} (x) ... (x) S_{w_n}; rejects words whose product dimension
/// exceeds the configured cap.
DensityMatrix codeword_state(const Channel& ch, const std::vector<int>& word);

/// Square-root measurement X_j = T^{-1/2} S_j T^{-1/2}, T = sum_k S_k,
/// with the inverse square root taken on the support of T.
POVM square_root_measurement(const std::vector<DensityMatrix>& states);

ErrorProfile error_profile(const std::vector<DensityMatrix>& states, const POVM& povm);

/// Random-coding Monte Carlo: codewords drawn i.i.d. from the prior,
/// decoded with the square-root measurement.
struct TrialResult {
    int n = 0;
    int codebook_size = 0;
    double rate_nats = 0.0;
    int trials = 0;
    double mean_avg_err = 0.0;
    double mean_max_err = 0.0;
    /// -log(mean_avg_err)/n; +inf when every trial decoded perfectly.
    double exponent_proxy = 0.0;
};

TrialResult random_code_trial(const Channel& ch, const Prior& prior,
                              int n, int codebook_size, int trials,
                              std::uint64_t seed);

}  // namespace cqexp
