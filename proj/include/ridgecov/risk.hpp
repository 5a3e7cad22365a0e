#pragma once

#include "ridgecov/coverage.hpp"
#include "ridgecov/point_cloud.hpp"
#include "ridgecov/random.hpp"
#include "ridgecov/scms.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ridgecov {

enum class RiskMethod { Split, Bootstrap };
enum class Objective { L1, L2 };

std::string to_string(RiskMethod method);
std::string to_string(Objective objective);
RiskMethod parse_risk_method(const std::string& text);
Objective parse_objective(const std::string& text);

/// Estimated L1 / L2 coverage risk at one bandwidth. Infinite risks mark a
/// bandwidth at which some ridge came out empty.
struct RiskEstimate {
    double risk1 = 0.0;
    double risk2 = 0.0;
    RiskMethod method = RiskMethod::Split;
    std::size_t replicates = 0;
    double h = 0.0;

    bool failed() const;
    double value(Objective objective) const { return objective == Objective::L1 ? risk1 : risk2; }
};

RiskEstimate failed_estimate(RiskMethod method, std::size_t replicates, double h);

struct RiskCurve {
    std::vector<RiskEstimate> entries;  // ascending in h
    double h_bar = 0.0;
    double h_star = 0.0;
    Objective objective = Objective::L1;
    RiskMethod method = RiskMethod::Split;
    /// Grid values above h_bar that were not evaluated.
    std::vector<double> dropped;
    /// Seed of the common random stream shared by every grid point.
    std::uint64_t stream_seed = 0;
};

/// Data-splitting estimate from an explicit pair of halves.
RiskEstimate risk_from_halves(const PointCloud& first, const PointCloud& second, double h, const ScmsConfig& cfg);

/// Randomly permutes the data, splits it in two (the first half takes the
/// extra point when n is odd) and compares the two half-sample ridges.
RiskEstimate risk_split(const PointCloud& data, double h, const ScmsConfig& cfg, Rng& rng);

/// Test and diagnostic knobs for the smoothed bootstrap.
struct BootstrapHooks {
    /// Bandwidth of the resampling noise; defaults to h.
    std::optional<double> noise_bandwidth;
    /// Use every data point once, in order, instead of resampling with replacement.
    bool identity_resample = false;
};

/// Smoothed-bootstrap estimate: average over `replicates` draws from the KDE of
/// the losses between the ridge of the data and the ridge of the draw.
RiskEstimate risk_bootstrap(const PointCloud& data, double h, std::size_t replicates, const ScmsConfig& cfg, Rng& rng,
                            const BootstrapHooks& hooks = {});

/// Loss of the ridge estimate against a known ground-truth manifold; infinite
/// when the ridge is empty.
LossPair oracle_loss(const RidgeSet& ridge, const Manifold& truth);

/// "min:max:count:geom|lin".
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
    bool geometric = true;

    static GridSpec parse(const std::string& text);
    std::vector<double> values() const;
    std::string to_string() const;
};

/// 12 geometrically spaced bandwidths in [h_bar / 20, h_bar].
std::vector<double> default_bandwidth_grid(double h_bar);

struct SelectionOptions {
    RiskMethod method = RiskMethod::Split;
    Objective objective = Objective::L1;
    std::size_t replicates = 10;
};

/// Evaluates the chosen risk estimator on every grid bandwidth not above the
/// normal reference bandwidth and picks the minimizer (smallest h on ties).
/// All grid points share one random stream, so differences between entries
/// reflect h rather than resampling noise.
RiskCurve select_bandwidth(const PointCloud& data, std::vector<double> grid, const SelectionOptions& options,
                           const ScmsConfig& cfg, Rng& rng);

/// Index of the entry minimizing the objective; ties go to the smallest h.
std::size_t argmin_entry(const std::vector<RiskEstimate>& entries, Objective objective);

}  // namespace ridgecov
