#include "cqexp/rate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "cqexp/errors.hpp"
#include "cqexp/exponent.hpp"
#include "cqexp/rng.hpp"

namespace cqexp {

SupResult sup_over_s(const Channel& ch, const Prior& prior, double rate) {
    if (!(rate >= 0.0)) throw ValidationError("rate must be nonnegative");
    auto f = [&](double s) { return eq_aux(ch, prior, s) - s * rate; };

    // golden-section maximization on [0, 1]; f is concave by the concavity
    // of E_q, so unimodal
    const double inv_phi = 0.6180339887498949;
    double a = 0.0, b = 1.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-8) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }

    // candidates: interior point plus the exact endpoints (the maximizer of
    // a concave f may sit on the boundary)
    double s_star = 0.5 * (a + b);
    double best = f(s_star);
    if (const double f1 = f(1.0); f1 > best) {
        best = f1;
        s_star = 1.0;
    }
    if (0.0 >= best) {  // f(0) = E_q(pi, 0) = 0: closure convention
        return SupResult{0.0, 0.0};
    }
    return SupResult{s_star, best};
}

std::vector<double> project_simplex(std::vector<double> v) {
    // Euclidean projection (sort + threshold)
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumulative = 0.0, theta = 0.0;
    std::size_t rho = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cumulative += u[i];
        const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            rho = i + 1;
            theta = t;
        }
    }
    (void)rho;
    for (auto& x : v) x = std::max(x - theta, 0.0);
    // repair rounding so the weights pass the prior invariant exactly enough
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& x : v) x /= total;
    return v;
}

namespace {

// Projected finite-difference ascent on the simplex from one start.
// Deterministic; the objective is evaluated through `objective`.
struct AscentResult {
    std::vector<double> prior;
    double value;
};

AscentResult ascend(const std::function<double(const Prior&)>& objective,
                    std::vector<double> start) {
    const std::size_t a = start.size();
    double value = objective(Prior(start));
    if (a == 1) return {std::move(start), value};

    const double grad_step = 1e-6;
    double step = 0.25;
    for (int iter = 0; iter < 300 && step > 1e-10; ++iter) {
        // central differences along simplex-feasible directions
        std::vector<double> grad(a, 0.0);
        for (std::size_t i = 0; i < a; ++i) {
            std::vector<double> up = start, down = start;
            up[i] += grad_step;
            down[i] = std::max(down[i] - grad_step, 0.0);
            grad[i] = (objective(Prior(project_simplex(up))) -
                       objective(Prior(project_simplex(down)))) /
                      (2.0 * grad_step);
        }
        const double mean = std::accumulate(grad.begin(), grad.end(), 0.0) /
                            static_cast<double>(a);
        for (auto& g : grad) g -= mean;

        bool moved = false;
        while (step > 1e-10) {
            std::vector<double> candidate(a);
            for (std::size_t i = 0; i < a; ++i) candidate[i] = start[i] + step * grad[i];
            candidate = project_simplex(std::move(candidate));
            const double cand_value = objective(Prior(candidate));
            if (cand_value > value + 1e-14) {
                start = std::move(candidate);
                value = cand_value;
                step *= 1.5;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return {std::move(start), value};
}

AscentResult multi_start(const std::function<double(const Prior&)>& objective,
                         std::size_t a, std::uint64_t seed, int starts) {
    std::vector<std::vector<double>> start_points;
    start_points.push_back(std::vector<double>(a, 1.0 / static_cast<double>(a)));
    for (std::size_t i = 0; i < a && start_points.size() < static_cast<std::size_t>(starts); ++i) {
        std::vector<double> vertex(a, 0.0);
        vertex[i] = 1.0;
        start_points.push_back(std::move(vertex));
    }
    Rng rng(mix_seed(seed, 0xd1a1));
    while (start_points.size() < static_cast<std::size_t>(starts))
        start_points.push_back(rng.dirichlet(a));

    AscentResult best{std::vector<double>(), -std::numeric_limits<double>::infinity()};
    for (auto& sp : start_points) {
        AscentResult r = ascend(objective, std::move(sp));
        // deterministic tie-breaking: value first, then lexicographic prior
        if (r.value > best.value + 1e-14 ||
            (std::abs(r.value - best.value) <= 1e-14 && r.prior < best.prior)) {
            best = std::move(r);
        }
    }
    return best;
}

}  // namespace

RateExponentPoint max_over_prior(const Channel& ch, double rate,
                                 std::uint64_t seed, int starts) {
    if (!(rate >= 0.0)) throw ValidationError("rate must be nonnegative");
    auto objective = [&](const Prior& p) { return sup_over_s(ch, p, rate).value; };
    AscentResult best = multi_start(objective, ch.alphabet_size(), seed, starts);
    Prior prior(best.prior);
    SupResult sup = sup_over_s(ch, prior, rate);
    return RateExponentPoint{rate, sup.s_star, std::move(prior), sup.value};
}

std::vector<RateExponentPoint> curve(const Channel& ch,
                                     const std::vector<double>& rate_grid,
                                     std::uint64_t seed) {
    for (std::size_t k = 1; k < rate_grid.size(); ++k)
        if (!(rate_grid[k] > rate_grid[k - 1]))
            throw ValidationError("rate grid must be increasing");
    std::vector<RateExponentPoint> points;
    points.reserve(rate_grid.size());
    for (double r : rate_grid) points.push_back(max_over_prior(ch, r, seed));
    return points;
}

double capacity_estimate(const Channel& ch, std::uint64_t seed) {
    auto objective = [&](const Prior& p) { return holevo_quantity(ch, p); };
    return multi_start(objective, ch.alphabet_size(), seed, 20).value;
}

}  // namespace cqexp
