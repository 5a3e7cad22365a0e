#include "ridgecov/serialize.hpp"

#include "ridgecov/datasets.hpp"

#include <cmath>

namespace ridgecov {

nlohmann::json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

void write_ridge_csv(std::ostream& out, const RidgeSet& ridge, std::size_t dim, const std::vector<std::string>& names) {
    for (const auto& name : names.size() == dim ? names : coordinate_names(dim)) out << name << ',';
    out << "density,projected_gradient_norm,lambda2\n";
    for (const auto& p : ridge.points) {
        for (Eigen::Index k = 0; k < p.position.size(); ++k) out << format_double(p.position[k]) << ',';
        out << format_double(p.density) << ',' << format_double(p.projected_gradient_norm) << ','
            << format_double(p.lambda2) << '\n';
    }
}

nlohmann::json to_json(const ScmsConfig& cfg) {
    return {{"max_iterations", cfg.max_iterations},
            {"tolerance", cfg.tolerance},
            {"tolerance_units", "bandwidth"},
            {"mesh", cfg.mesh.to_string()},
            {"subspace", to_string(cfg.subspace)},
            {"density_threshold_fraction", cfg.density_threshold_fraction}};
}

nlohmann::json to_json(const ScmsDiagnostics& diag) {
    return {{"mesh_size", diag.mesh_size},         {"converged", diag.converged},
            {"hit_max_iterations", diag.hit_max_iterations}, {"diverged", diag.diverged},
            {"escaped", diag.escaped},             {"eigen_ties", diag.eigen_ties},
            {"not_ridge", diag.not_ridge},         {"below_threshold", diag.below_threshold}};
}

nlohmann::json ridge_summary_json(const RidgeSet& ridge) {
    return {{"points", ridge.size()},
            {"empty", ridge.empty()},
            {"bandwidth", ridge.bandwidth},
            {"density_threshold", ridge.density_threshold},
            {"source_size", ridge.source_size},
            {"diagnostics", to_json(ridge.diagnostics)}};
}

void write_coverage_csv(std::ostream& out, const CoverageDiagram& diagram) {
    out << "r,cdf_12,cdf_21\n";
    for (std::size_t i = 0; i < diagram.radii.size(); ++i)
        out << format_double(diagram.radii[i]) << ',' << format_double(diagram.cdf_12[i]) << ','
            << format_double(diagram.cdf_21[i]) << '\n';
}

void write_risk_csv(std::ostream& out, const RiskCurve& curve) {
    out << "h,risk1,risk2,method\n";
    for (const auto& e : curve.entries)
        out << format_double(e.h) << ',' << format_double(e.risk1) << ',' << format_double(e.risk2) << ','
            << to_string(e.method) << '\n';
}

nlohmann::json to_json(const RiskCurve& curve) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : curve.entries)
        entries.push_back({{"h", e.h},
                           {"risk1", json_number(e.risk1)},
                           {"risk2", json_number(e.risk2)},
                           {"failed", e.failed()},
                           {"replicates", e.replicates}});
    return {{"h_star", curve.h_star},
            {"h_bar", curve.h_bar},
            {"objective", to_string(curve.objective)},
            {"method", to_string(curve.method)},
            {"stream_seed", curve.stream_seed},
            {"dropped", curve.dropped},
            {"entries", entries}};
}

}  // namespace ridgecov
