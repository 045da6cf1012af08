#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cqexp/matrix.hpp"

namespace cqexp {

/// Unit-trace PSD Hermitian matrix. Construction validates
/// |tr - 1| <= 1e-10 and eigenvalues >= -1e-12.
class DensityMatrix {
  public:
    explicit DensityMatrix(HermitianMatrix m);
    static DensityMatrix diagonal(const std::vector<double>& probabilities);
    /// Rank-one projector onto the given (unnormalized) vector.
    static DensityMatrix pure(const std::vector<cxd>& amplitudes);

    std::size_t dim() const { return m_.dim(); }
    const HermitianMatrix& hermitian() const { return m_; }

  private:
    HermitianMatrix m_;
};

/// Probability distribution over the input alphabet; entries may be zero.
class Prior {
  public:
    explicit Prior(std::vector<double> weights);
    static Prior uniform(std::size_t n);

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    const std::vector<double>& weights() const { return w_; }

  private:
    std::vector<double> w_;
};

/// Classical-quantum channel: input letter i maps to the signal state S_i.
class Channel {
  public:
    explicit Channel(std::vector<DensityMatrix> states);

    std::size_t alphabet_size() const { return states_.size(); }
    std::size_t dim() const { return states_.front().dim(); }
    const DensityMatrix& state(std::size_t i) const { return states_[i]; }
    const std::vector<DensityMatrix>& states() const { return states_; }

  private:
    std::vector<DensityMatrix> states_;
};

struct ChannelDocument {
    Channel channel;
    Prior prior;  // uniform when absent from the document
};

/// Parse { "dim": d, "states": [{"re": [[..]], "im": [[..]]}, ...],
/// "prior": [..] }; "im" defaults to zeros, "prior" to uniform.
/// Violations report the state index and offending value.
ChannelDocument load_channel(const nlohmann::json& doc);
ChannelDocument load_channel_file(const std::string& path);
nlohmann::json save_channel(const Channel& ch, const Prior& prior);

/// Parse one {"re": .., "im": ..} matrix object of the channel schema.
HermitianMatrix parse_matrix(const nlohmann::json& obj, const std::string& label);
nlohmann::json matrix_to_json(const HermitianMatrix& m);

/// A(s) = sum_i pi_i S_i^{1/(1+s)} for s > -1. Zero-weight states are
/// dropped before the powers are taken.
HermitianMatrix mixed_power_state(const Channel& ch, const Prior& prior, double s);

/// S(rho) = -sum lambda log lambda in nats; eigenvalues clamped to [0, 1].
double von_neumann_entropy(const DensityMatrix& rho);

/// chi = S(sum pi_i S_i) - sum pi_i S(S_i) in nats.
double holevo_quantity(const Channel& ch, const Prior& prior);

}  // namespace cqexp
