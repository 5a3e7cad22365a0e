#pragma once

#include "ridgecov/coverage.hpp"
#include "ridgecov/risk.hpp"
#include "ridgecov/scms.hpp"

#include <json.hpp>

#include <ostream>

namespace ridgecov {

/// x1..xd, density, projected_gradient_norm, lambda2, one row per ridge point.
/// Coordinate columns are named after `names` when it has dim entries, x1..xd otherwise.
void write_ridge_csv(std::ostream& out, const RidgeSet& ridge, std::size_t dim,
                     const std::vector<std::string>& names = {});

nlohmann::json to_json(const ScmsConfig& cfg);
nlohmann::json to_json(const ScmsDiagnostics& diag);
/// Summary of the ridge set (sizes, threshold, diagnostics), without the points.
nlohmann::json ridge_summary_json(const RidgeSet& ridge);

/// r, cdf_12, cdf_21.
void write_coverage_csv(std::ostream& out, const CoverageDiagram& diagram);

/// h, risk1, risk2, method. Failed bandwidths print as inf.
void write_risk_csv(std::ostream& out, const RiskCurve& curve);
nlohmann::json to_json(const RiskCurve& curve);

/// Non-finite values become null.
nlohmann::json json_number(double v);

}  // namespace ridgecov
