#include "cqexp/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cqexp/config.hpp"
#include "cqexp/errors.hpp"
#include "cqexp/spectral.hpp"

namespace cqexp {

using nlohmann::json;

DensityMatrix::DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
    const double tr = m_.trace_real();
    if (std::abs(tr - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "density matrix trace " << tr << " violates |tr - 1| <= 1e-10";
        throw ValidationError(os.str());
    }
    const auto dec = eigh(m_);
    if (dec.eigenvalues.front() < -1e-12) {
        std::ostringstream os;
        os << "density matrix eigenvalue " << dec.eigenvalues.front()
           << " below -1e-12";
        throw ValidationError(os.str());
    }
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probabilities) {
    return DensityMatrix(HermitianMatrix::diagonal(probabilities));
}

DensityMatrix DensityMatrix::pure(const std::vector<cxd>& amplitudes) {
    const std::size_t d = amplitudes.size();
    double norm2 = 0.0;
    for (const cxd& z : amplitudes) norm2 += std::norm(z);
    if (norm2 <= 0.0) throw ValidationError("pure state amplitude vector is zero");
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm2;
    return DensityMatrix(HermitianMatrix(std::move(m)));
}

Prior::Prior(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw ValidationError("prior is empty");
    double total = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (!(w_[i] >= 0.0)) {
            std::ostringstream os;
            os << "prior[" << i << "] = " << w_[i] << " is negative";
            throw ValidationError(os.str());
        }
        total += w_[i];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "prior sums to " << total << ", violating |sum - 1| <= 1e-12";
        throw ValidationError(os.str());
    }
}

Prior Prior::uniform(std::size_t n) {
    if (n == 0) throw ValidationError("prior is empty");
    return Prior(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Channel::Channel(std::vector<DensityMatrix> states) : states_(std::move(states)) {
    if (states_.empty()) throw ValidationError("channel needs at least one state");
    const std::size_t d = states_.front().dim();
    for (std::size_t i = 1; i < states_.size(); ++i) {
        if (states_[i].dim() != d) {
            std::ostringstream os;
            os << "state " << i << " has dim " << states_[i].dim()
               << ", expected " << d;
            throw ValidationError(os.str());
        }
    }
}

HermitianMatrix parse_matrix(const json& obj, const std::string& label) {
    if (!obj.is_object() || !obj.contains("re"))
        throw ValidationError(label + ": expected an object with \"re\" (and optional \"im\")");
    const auto& re = obj.at("re");
    if (!re.is_array() || re.empty())
        throw ValidationError(label + ": \"re\" must be a nonempty array of rows");
    const std::size_t d = re.size();
    ComplexMatrix m(d);
    auto fill = [&](const json& rows, bool imag) {
        if (rows.size() != d) throw ValidationError(label + ": matrix is not square");
        for (std::size_t i = 0; i < d; ++i) {
            const auto& row = rows.at(i);
            if (!row.is_array() || row.size() != d)
                throw ValidationError(label + ": matrix is not square");
            for (std::size_t j = 0; j < d; ++j) {
                const double v = row.at(j).get<double>();
                cxd& z = m(i, j);
                z = imag ? cxd{z.real(), v} : cxd{v, z.imag()};
            }
        }
    };
    fill(re, false);
    if (obj.contains("im")) fill(obj.at("im"), true);
    try {
        return HermitianMatrix(std::move(m));
    } catch (const ValidationError& e) {
        throw ValidationError(label + ": " + e.what());
    }
}

json matrix_to_json(const HermitianMatrix& m) {
    const std::size_t d = m.dim();
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < d; ++i) {
        json rrow = json::array(), irow = json::array();
        for (std::size_t j = 0; j < d; ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

ChannelDocument load_channel(const json& doc) {
    if (!doc.is_object()) throw ValidationError("channel document must be a JSON object");
    if (!doc.contains("dim") || !doc.contains("states"))
        throw ValidationError("channel document needs \"dim\" and \"states\"");
    const auto dim = doc.at("dim").get<std::int64_t>();
    if (dim < 1) throw ValidationError("\"dim\" must be a positive integer");
    const auto& states_json = doc.at("states");
    if (!states_json.is_array() || states_json.empty())
        throw ValidationError("\"states\" must be a nonempty array");

    std::vector<DensityMatrix> states;
    states.reserve(states_json.size());
    for (std::size_t i = 0; i < states_json.size(); ++i) {
        std::ostringstream label;
        label << "state " << i;
        HermitianMatrix h = parse_matrix(states_json.at(i), label.str());
        if (h.dim() != static_cast<std::size_t>(dim)) {
            std::ostringstream os;
            os << "state " << i << " has dim " << h.dim() << ", expected " << dim;
            throw ValidationError(os.str());
        }
        try {
            states.emplace_back(std::move(h));
        } catch (const ValidationError& e) {
            throw ValidationError(label.str() + ": " + e.what());
        }
    }
    Channel channel(std::move(states));

    if (doc.contains("prior")) {
        auto weights = doc.at("prior").get<std::vector<double>>();
        if (weights.size() != channel.alphabet_size())
            throw ValidationError("prior length does not match the number of states");
        return ChannelDocument{std::move(channel), Prior(std::move(weights))};
    }
    Prior prior = Prior::uniform(channel.alphabet_size());
    return ChannelDocument{std::move(channel), std::move(prior)};
}

ChannelDocument load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open channel file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
    return load_channel(doc);
}

json save_channel(const Channel& ch, const Prior& prior) {
    json states = json::array();
    for (std::size_t i = 0; i < ch.alphabet_size(); ++i)
        states.push_back(matrix_to_json(ch.state(i).hermitian()));
    return json{{"dim", ch.dim()}, {"states", std::move(states)}, {"prior", prior.weights()}};
}

HermitianMatrix mixed_power_state(const Channel& ch, const Prior& prior, double s) {
    if (prior.size() != ch.alphabet_size())
        throw ValidationError("prior length does not match the channel alphabet");
    if (!(s > -1.0)) throw DomainError("mixed_power_state requires s > -1");
    const double exponent = 1.0 / (1.0 + s);
    ComplexMatrix acc(ch.dim());
    for (std::size_t i = 0; i < ch.alphabet_size(); ++i) {
        if (prior[i] == 0.0) continue;  // zero-weight states are dropped
        HermitianMatrix powered = spectral_pow(ch.state(i).hermitian(), exponent);
        acc.add_scaled(cxd{prior[i], 0.0}, powered.matrix());
    }
    return HermitianMatrix(std::move(acc));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const auto dec = eigh(rho.hermitian());
    double h = 0.0;
    for (double ev : dec.eigenvalues) {
        const double p = std::clamp(ev, 0.0, 1.0);
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

double holevo_quantity(const Channel& ch, const Prior& prior) {
    if (prior.size() != ch.alphabet_size())
        throw ValidationError("prior length does not match the channel alphabet");
    ComplexMatrix avg(ch.dim());
    double conditional = 0.0;
    for (std::size_t i = 0; i < ch.alphabet_size(); ++i) {
        if (prior[i] == 0.0) continue;
        avg.add_scaled(cxd{prior[i], 0.0}, ch.state(i).hermitian().matrix());
        conditional += prior[i] * von_neumann_entropy(ch.state(i));
    }
    const DensityMatrix mixture{HermitianMatrix(std::move(avg))};
    return von_neumann_entropy(mixture) - conditional;
}

}  // namespace cqexp
