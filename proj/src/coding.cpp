#include "cqexp/coding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cqexp/config.hpp"
#include "cqexp/errors.hpp"
#include "cqexp/rng.hpp"
#include "cqexp/spectral.hpp"

namespace cqexp {

void Codebook::validate(std::size_t alphabet_size) const {
    if (words.empty()) throw ValidationError("codebook is empty");
    if (n < 1) throw ValidationError("block length must be >= 1");
    for (std::size_t m = 0; m < words.size(); ++m) {
        if (words[m].size() != static_cast<std::size_t>(n)) {
            std::ostringstream os;
            os << "codeword " << m << " has length " << words[m].size() << ", expected " << n;
            throw ValidationError(os.str());
        }
        for (int symbol : words[m]) {
            if (symbol < 0 || static_cast<std::size_t>(symbol) >= alphabet_size) {
                std::ostringstream os;
                os << "codeword " << m << " uses symbol " << symbol << " outside the alphabet";
                throw ValidationError(os.str());
            }
        }
    }
}

Codebook random_codebook(const Prior& prior, int n, int codebook_size, std::uint64_t seed) {
    if (n < 1) throw ValidationError("block length must be >= 1");
    if (codebook_size < 1) throw ValidationError("codebook size must be >= 1");
    std::vector<double> cdf(prior.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < prior.size(); ++i) {
        acc += prior[i];
        cdf[i] = acc;
    }
    Rng rng(seed);
    Codebook cb;
    cb.n = n;
    cb.words.reserve(codebook_size);
    for (int m = 0; m < codebook_size; ++m) {
        std::vector<int> word(n);
        for (int k = 0; k < n; ++k) {
            const double u = rng.uniform();
            auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
            word[k] = std::min<int>(static_cast<int>(it - cdf.begin()),
                                    static_cast<int>(prior.size()) - 1);
        }
        cb.words.push_back(std::move(word));
    }
    return cb;
}

POVM::POVM(std::vector<HermitianMatrix> elements, const HermitianMatrix& support_projector)
    : elements_(std::move(elements)) {
    if (elements_.empty()) throw ValidationError("POVM needs at least one element");
    const std::size_t d = elements_.front().dim();
    ComplexMatrix total(d);
    for (std::size_t j = 0; j < elements_.size(); ++j) {
        if (elements_[j].dim() != d) throw ValidationError("POVM: dimension mismatch");
        const auto dec = eigh(elements_[j]);
        if (dec.eigenvalues.front() < -1e-10) {
            std::ostringstream os;
            os << "POVM element " << j << " has eigenvalue " << dec.eigenvalues.front();
            throw ValidationError(os.str());
        }
        total += elements_[j].matrix();
    }
    const double residual = max_abs_diff(total, support_projector.matrix());
    if (residual > 1e-8) {
        std::ostringstream os;
        os << "POVM completeness residual " << residual << " exceeds 1e-8";
        throw ValidationError(os.str());
    }
}

DensityMatrix codeword_state(const Channel& ch, const std::vector<int>& word) {
    if (word.empty()) throw ValidationError("codeword is empty");
    const std::size_t cap = Config::get().dim_cap;
    std::size_t dim = 1;
    for (int symbol : word) {
        if (symbol < 0 || static_cast<std::size_t>(symbol) >= ch.alphabet_size()) {
            std::ostringstream os;
            os << "codeword symbol " << symbol << " outside the alphabet";
            throw ValidationError(os.str());
        }
        dim *= ch.dim();
        if (dim > cap) {
            std::ostringstream os;
            os << "codeword state dimension exceeds the cap " << cap;
            throw ValidationError(os.str());
        }
    }
    ComplexMatrix state = ch.state(word.front()).hermitian().matrix();
    for (std::size_t k = 1; k < word.size(); ++k)
        state = kron(state, ch.state(word[k]).hermitian().matrix());
    return DensityMatrix(HermitianMatrix(std::move(state)));
}

POVM square_root_measurement(const std::vector<DensityMatrix>& states) {
    if (states.empty()) throw ValidationError("square_root_measurement needs M >= 1 states");
    const std::size_t d = states.front().dim();
    ComplexMatrix sum(d);
    for (const auto& s : states) {
        if (s.dim() != d) throw ValidationError("square_root_measurement: dimension mismatch");
        sum += s.hermitian().matrix();
    }
    const auto dec = eigh(HermitianMatrix(std::move(sum)));

    // support cut relative to the largest eigenvalue of T
    const double cut = Config::get().eigen_floor * dec.eigenvalues.back();
    auto on_support = [cut](double x) { return x > cut; };
    const HermitianMatrix inv_sqrt = dec.apply(
        [&](double x) { return on_support(x) ? 1.0 / std::sqrt(x) : 0.0; });
    const HermitianMatrix projector = dec.apply(
        [&](double x) { return on_support(x) ? 1.0 : 0.0; });

    std::vector<HermitianMatrix> elements;
    elements.reserve(states.size());
    for (const auto& s : states) {
        elements.emplace_back(
            mul(inv_sqrt.matrix(), mul(s.hermitian().matrix(), inv_sqrt.matrix())));
    }
    return POVM(std::move(elements), projector);
}

ErrorProfile error_profile(const std::vector<DensityMatrix>& states, const POVM& povm) {
    if (states.size() != povm.size())
        throw ValidationError("error_profile: state and POVM counts differ");
    ErrorProfile profile;
    profile.per_word.reserve(states.size());
    double total = 0.0;
    double worst = 0.0;
    for (std::size_t j = 0; j < states.size(); ++j) {
        if (states[j].dim() != povm.element(j).dim())
            throw ValidationError("error_profile: dimension mismatch");
        const double hit =
            trace_of_product(states[j].hermitian().matrix(), povm.element(j).matrix()).real();
        double p = 1.0 - hit;
        if (p > 1.0 + 1e-10 || p < -1e-10) {
            std::ostringstream os;
            os << "error probability " << p << " for word " << j << " is out of range";
            throw ValidationError(os.str());
        }
        p = std::clamp(p, 0.0, 1.0 + 1e-10);
        profile.per_word.push_back(p);
        total += p;
        worst = std::max(worst, p);
    }
    profile.average = total / static_cast<double>(states.size());
    profile.max = worst;
    return profile;
}

TrialResult random_code_trial(const Channel& ch, const Prior& prior,
                              int n, int codebook_size, int trials,
                              std::uint64_t seed) {
    if (n < 1) throw ValidationError("block length must be >= 1");
    if (codebook_size < 1) throw ValidationError("codebook size must be >= 1");
    if (trials < 1) throw ValidationError("trials must be >= 1");
    if (prior.size() != ch.alphabet_size())
        throw ValidationError("prior length does not match the channel alphabet");

    double sum_avg = 0.0, sum_max = 0.0;
    for (int t = 0; t < trials; ++t) {
        // counter-based per-trial seeds keep trials independent and replayable
        const Codebook cb =
            random_codebook(prior, n, codebook_size, mix_seed(seed, static_cast<std::uint64_t>(t)));
        cb.validate(ch.alphabet_size());
        std::vector<DensityMatrix> states;
        states.reserve(cb.size());
        for (const auto& word : cb.words) states.push_back(codeword_state(ch, word));
        const POVM povm = square_root_measurement(states);
        const ErrorProfile profile = error_profile(states, povm);
        sum_avg += profile.average;
        sum_max += profile.max;
    }

    TrialResult result;
    result.n = n;
    result.codebook_size = codebook_size;
    result.rate_nats = std::log(static_cast<double>(codebook_size)) / n;
    result.trials = trials;
    result.mean_avg_err = sum_avg / trials;
    result.mean_max_err = sum_max / trials;
    result.exponent_proxy =
        result.mean_avg_err > 0.0
            ? -std::log(result.mean_avg_err) / n
            : std::numeric_limits<double>::infinity();
    return result;
}

}  // namespace cqexp
