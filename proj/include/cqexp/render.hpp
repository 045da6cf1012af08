#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cqexp/coding.hpp"
#include "cqexp/inequality.hpp"
#include "cqexp/rate.hpp"

namespace cqexp {

/// 12 significant digits, the precision contract for human-readable output.
std::string fmt_g12(double v);

/// Nats unless bits were requested; display-only conversion.
double display_value(double nats, bool bits);

/// CSV rows "R,s_star,value,prior_0..prior_{a-1}" with header.
std::string curve_csv(const std::vector<RateExponentPoint>& points, bool bits);

/// CSV row "n,M,R_nats,trials,mean_avg_err,mean_max_err,exponent_proxy".
std::string trial_csv(const std::vector<TrialResult>& results);

/// Fixed-width summary line for one inequality check.
std::string report_line(const std::string& label, const InequalityReport& rep);

nlohmann::json report_to_json(const InequalityReport& rep);
nlohmann::json summary_to_json(const FuzzSummary& summary);
std::string summary_text(const FuzzSummary& summary);

}  // namespace cqexp
