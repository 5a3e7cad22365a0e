#pragma once

#include "ridgecov/kde.hpp"
#include "ridgecov/point_cloud.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ridgecov {

/// Where SCMS trajectories start.
struct Mesh {
    enum class Kind { DataPoints, Grid };
    Kind kind = Kind::DataPoints;
    /// Grid nodes per axis over the data's bounding box (Grid only).
    std::size_t resolution = 0;

    static Mesh data_points() { return {}; }
    static Mesh grid(std::size_t per_axis) { return {Kind::Grid, per_axis}; }

    /// "data" or "grid:<resolution>".
    static Mesh parse(const std::string& text);
    std::string to_string() const;
};

/// Matrix whose trailing eigenvectors span the SCMS step.
/// LogDensity uses the Hessian of log p, -H/p + g g^T / p^2 up to sign, which is
/// what mean-shift ridge finders usually diagonalize; Density uses H itself.
/// Ridge membership (lambda2 < 0) is always judged on H.
enum class Subspace { LogDensity, Density };

std::string to_string(Subspace s);
/// "log-density" or "density".
Subspace parse_subspace(const std::string& text);

struct ScmsConfig {
    std::size_t max_iterations = 500;
    /// Stop once the projected step is shorter than tolerance * h.
    double tolerance = 1e-6;
    Mesh mesh = Mesh::data_points();
    Subspace subspace = Subspace::LogDensity;
    /// Ridge points below this fraction of the maximal density are dropped.
    double density_threshold_fraction = 0.05;
    /// Worker threads for the per-mesh-point loop; 0 = hardware concurrency.
    /// Results do not depend on this value.
    unsigned threads = 0;

    void validate() const;
};

struct RidgePoint {
    Vector position;
    double density = 0.0;
    /// Length of the projected mean-shift step V V^T (m(x) - x) at position,
    /// i.e. the projected gradient measured in displacement units.
    double projected_gradient_norm = 0.0;
    /// Second-largest Hessian eigenvalue at position.
    double lambda2 = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// How the mesh points were accounted for during extraction.
struct ScmsDiagnostics {
    std::size_t mesh_size = 0;
    std::size_t converged = 0;
    std::size_t hit_max_iterations = 0;
    std::size_t diverged = 0;       // kernel weights underflowed to zero
    std::size_t escaped = 0;        // left the data bounding box grown by 3h
    std::size_t eigen_ties = 0;     // lambda1 == lambda2 at the limit
    std::size_t not_ridge = 0;      // lambda2 >= 0 at the limit
    std::size_t below_threshold = 0;
};

/// Converged, filtered SCMS output: a point-set estimate of the density ridge.
struct RidgeSet {
    std::vector<RidgePoint> points;
    double bandwidth = 0.0;
    double density_threshold = 0.0;
    std::size_t source_size = 0;
    ScmsDiagnostics diagnostics;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
    /// Positions as an m x d matrix in mesh order. Requires a nonempty set.
    Matrix positions() const;
};

/// Local quantities that drive one SCMS update.
struct ScmsProbe {
    /// V V^T (m(x) - x): the SCMS displacement.
    Vector displacement;
    /// V V^T grad p(x).
    Vector projected_gradient;
    double density = 0.0;
    double lambda1 = 0.0;
    /// Eigenvalues of H, whatever matrix chose the step subspace.
    /// lambda2 is NaN when d = 1.
    double lambda2 = 0.0;
};

/// Eigenvectors are columns; each is flipped so its first nonzero coordinate is positive.
void canonicalize_eigenvector_signs(Eigen::MatrixXd& vectors);

/// Throws DivergenceError when every kernel weight at x underflows and
/// NumericalError when the Hessian cannot be diagonalized.
ScmsProbe scms_probe(const KernelModel& model, const Vector& x, Subspace subspace = Subspace::LogDensity);

/// One subspace-constrained mean-shift update, x + V V^T (m(x) - x).
Vector scms_step(const KernelModel& model, const Vector& x, Subspace subspace = Subspace::LogDensity);

/// Mesh points for the given configuration.
Matrix build_mesh(const PointCloud& data, const Mesh& mesh);

/// Runs SCMS from every mesh point and keeps the converged ridge points
/// (lambda2 < 0, density above the configured fraction of the maximum).
/// An empty result is reported through RidgeSet::empty(), not an exception.
RidgeSet extract_ridge(const PointCloud& data, double h, const ScmsConfig& cfg);

}  // namespace ridgecov
