#include "cqexp/exponent.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cqexp/config.hpp"
#include "cqexp/errors.hpp"
#include "cqexp/spectral.hpp"

namespace cqexp {
namespace {

void require_s_range(double s) {
    if (!(s > -1.0) || !(s <= 1.0)) {
        std::ostringstream os;
        os << "s = " << s << " outside the evaluable range (-1, 1]";
        throw DomainError(os.str());
    }
}

}  // namespace

double eq_aux(const Channel& ch, const Prior& prior, double s) {
    require_s_range(s);
    HermitianMatrix a = mixed_power_state(ch, prior, s);
    return -std::log(trace_spectral_pow(a, 1.0 + s));
}

double eq_derivative(const Channel& ch, const Prior& prior, double s) {
    require_s_range(s);
    const double h = Config::get().fd_step;
    auto f = [&](double t) { return eq_aux(ch, prior, t); };

    // one-sided at the ends of the range, central elsewhere, both with one
    // Richardson level
    if (s + h > 1.0) {
        const double d1 = (f(s) - f(s - h)) / h;
        const double d2 = (f(s) - f(s - h / 2)) / (h / 2);
        return 2.0 * d2 - d1;
    }
    if (s - h < 0.0 && s >= 0.0) {
        const double d1 = (f(s + h) - f(s)) / h;
        const double d2 = (f(s + h / 2) - f(s)) / (h / 2);
        return 2.0 * d2 - d1;
    }
    // keep evaluation points above -1
    const double hh = std::min(h, 0.5 * (s + 1.0));
    const double d1 = (f(s + hh) - f(s - hh)) / (2.0 * hh);
    const double d2 = (f(s + hh / 2) - f(s - hh / 2)) / hh;
    return (4.0 * d2 - d1) / 3.0;
}

double gallager_e0_scalar(const std::vector<std::vector<double>>& transition,
                          const Prior& prior, double s) {
    if (!(s > -1.0)) throw DomainError("gallager_e0_scalar requires s > -1");
    if (transition.size() != prior.size())
        throw ValidationError("transition row count does not match the prior");
    if (transition.empty()) throw ValidationError("transition matrix is empty");
    const std::size_t cols = transition.front().size();
    for (std::size_t i = 0; i < transition.size(); ++i) {
        const auto& row = transition[i];
        if (row.size() != cols) throw ValidationError("transition rows have unequal length");
        double total = 0.0;
        for (double p : row) {
            if (p < 0.0) {
                std::ostringstream os;
                os << "transition[" << i << "] has a negative entry " << p;
                throw ValidationError(os.str());
            }
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "transition row " << i << " sums to " << total;
            throw ValidationError(os.str());
        }
    }

    const double gamma = 1.0 / (1.0 + s);
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
        double inner = 0.0;
        for (std::size_t i = 0; i < transition.size(); ++i) {
            if (prior[i] == 0.0) continue;
            inner += prior[i] * std::pow(transition[i][j], gamma);
        }
        sum += std::pow(inner, 1.0 + s);
    }
    return -std::log(sum);
}

ConcavityReport concavity_scan(const Channel& ch, const Prior& prior,
                               const std::vector<double>& s_grid) {
    if (s_grid.size() < 3) throw ValidationError("concavity_scan needs at least 3 grid points");
    for (std::size_t k = 0; k < s_grid.size(); ++k) {
        require_s_range(s_grid[k]);
        if (k > 0 && !(s_grid[k] > s_grid[k - 1]))
            throw ValidationError("concavity_scan grid must be strictly increasing");
    }

    ConcavityReport rep;
    rep.s_grid = s_grid;
    rep.values.reserve(s_grid.size());
    for (double s : s_grid) rep.values.push_back(eq_aux(ch, prior, s));

    rep.second_differences.reserve(s_grid.size() - 2);
    rep.max_second_difference = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k + 1 < s_grid.size(); ++k) {
        const double hl = s_grid[k] - s_grid[k - 1];
        const double hr = s_grid[k + 1] - s_grid[k];
        // 2x the gap between the chord and the value; reduces to
        // v_{k-1} - 2 v_k + v_{k+1} when hl == hr, and is <= 0 iff the
        // three points are concavely ordered
        const double chord =
            (hr * rep.values[k - 1] + hl * rep.values[k + 1]) / (hl + hr);
        const double dd = 2.0 * (chord - rep.values[k]);
        rep.second_differences.push_back(dd);
        rep.max_second_difference = std::max(rep.max_second_difference, dd);
    }

    rep.monotone_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < rep.values.size(); ++k)
        rep.monotone_violation = std::max(rep.monotone_violation,
                                          rep.values[k] - rep.values[k + 1]);
    return rep;
}

}  // namespace cqexp
