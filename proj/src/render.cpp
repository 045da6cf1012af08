#include "cqexp/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cqexp {

using nlohmann::json;

std::string fmt_g12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double display_value(double nats, bool bits) {
    return bits ? nats / std::log(2.0) : nats;
}

std::string curve_csv(const std::vector<RateExponentPoint>& points, bool bits) {
    std::ostringstream os;
    const std::size_t a = points.empty() ? 0 : points.front().prior_star.size();
    os << "R,s_star,value";
    for (std::size_t i = 0; i < a; ++i) os << ",prior_" << i;
    os << "\n";
    for (const auto& p : points) {
        os << fmt_g12(display_value(p.rate, bits)) << "," << fmt_g12(p.s_star) << ","
           << fmt_g12(display_value(p.value, bits));
        for (std::size_t i = 0; i < p.prior_star.size(); ++i)
            os << "," << fmt_g12(p.prior_star[i]);
        os << "\n";
    }
    return os.str();
}

std::string trial_csv(const std::vector<TrialResult>& results) {
    std::ostringstream os;
    os << "n,M,R_nats,trials,mean_avg_err,mean_max_err,exponent_proxy\n";
    for (const auto& r : results) {
        os << r.n << "," << r.codebook_size << "," << fmt_g12(r.rate_nats) << ","
           << r.trials << "," << fmt_g12(r.mean_avg_err) << ","
           << fmt_g12(r.mean_max_err) << "," << fmt_g12(r.exponent_proxy) << "\n";
    }
    return os.str();
}

std::string report_line(const std::string& label, const InequalityReport& rep) {
    std::ostringstream os;
    os << label << ": lhs=" << fmt_g12(rep.lhs) << " rhs=" << fmt_g12(rep.rhs)
       << " gap=" << fmt_g12(rep.gap) << " scale=" << fmt_g12(rep.scale);
    if (rep.support_restricted) os << " [support-restricted]";
    return os.str();
}

json report_to_json(const InequalityReport& rep) {
    json j{
        {"inequality", rep.inequality_id},
        {"lhs", rep.lhs},
        {"rhs", rep.rhs},
        {"gap", rep.gap},
        {"scale", rep.scale},
        {"imag_residue", rep.imag_residue},
        {"support_restricted", rep.support_restricted},
        {"witness", rep.witness},
    };
    if (rep.formulation_delta) j["formulation_delta"] = *rep.formulation_delta;
    return j;
}

json summary_to_json(const FuzzSummary& summary) {
    return json{
        {"inequality", summary.inequality_id},
        {"instances", summary.instances},
        {"violations", summary.violations},
        {"evaluation_errors", summary.evaluation_errors},
        {"min_gap", summary.min_gap},
        {"exploratory", summary.exploratory},
        {"worst", report_to_json(summary.worst)},
    };
}

std::string summary_text(const FuzzSummary& summary) {
    std::ostringstream os;
    os << "inequality:        " << summary.inequality_id << "\n"
       << "instances:         " << summary.instances << "\n"
       << "violations:        " << summary.violations << "\n"
       << "evaluation errors: " << summary.evaluation_errors << "\n"
       << "min gap:           " << fmt_g12(summary.min_gap) << "\n"
       << "mode:              " << (summary.exploratory ? "exploratory" : "assertion") << "\n"
       << report_line("worst instance", summary.worst) << "\n";
    return os.str();
}

}  // namespace cqexp
