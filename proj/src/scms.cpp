#include "ridgecov/scms.hpp"

#include "ridgecov/errors.hpp"
#include "ridgecov/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace ridgecov {

Mesh Mesh::parse(const std::string& text) {
    if (text == "data") return data_points();
    const std::string prefix = "grid:";
    if (text.rfind(prefix, 0) == 0) {
        std::size_t res = 0;
        const char* first = text.data() + prefix.size();
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, res);
        if (ec == std::errc() && ptr == last && res >= 2) return grid(res);
    }
    throw InputError("mesh must be 'data' or 'grid:<points per axis >= 2>', got '" + text + "'");
}

std::string Mesh::to_string() const {
    return kind == Kind::DataPoints ? "data" : "grid:" + std::to_string(resolution);
}

std::string to_string(Subspace s) { return s == Subspace::LogDensity ? "log-density" : "density"; }

Subspace parse_subspace(const std::string& text) {
    if (text == "log-density") return Subspace::LogDensity;
    if (text == "density") return Subspace::Density;
    throw InputError("subspace must be 'log-density' or 'density', got '" + text + "'");
}

void ScmsConfig::validate() const {
    if (max_iterations < 1) throw InputError("max_iterations must be at least 1");
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw InputError("tolerance must be positive");
    if (!(density_threshold_fraction >= 0.0 && density_threshold_fraction <= 1.0))
        throw InputError("density threshold fraction must lie in [0, 1]");
    if (mesh.kind == Mesh::Kind::Grid && mesh.resolution < 2)
        throw InputError("grid mesh needs at least 2 points per axis");
}

Matrix RidgeSet::positions() const {
    if (points.empty()) throw ContractError("positions() of an empty ridge set");
    const auto d = points.front().position.size();
    Matrix out(static_cast<Eigen::Index>(points.size()), d);
    for (std::size_t i = 0; i < points.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = points[i].position.transpose();
    return out;
}

void canonicalize_eigenvector_signs(Eigen::MatrixXd& vectors) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
            const double v = vectors(i, j);
            if (v == 0.0) continue;
            if (v < 0.0) vectors.col(j) = -vectors.col(j);
            break;
        }
    }
}

ScmsProbe scms_probe(const KernelModel& model, const Vector& x, Subspace subspace) {
    const LocalMoments m = model.moments(x);
    if (!(m.weight_sum > 0.0))
        throw DivergenceError("kernel density underflows to zero at the query point");

    const auto d = static_cast<Eigen::Index>(model.dim());
    ScmsProbe probe;
    probe.density = m.density;
    if (d == 1) {
        probe.displacement = Vector::Zero(1);
        probe.projected_gradient = Vector::Zero(1);
        probe.lambda1 = m.hessian(0, 0);
        probe.lambda2 = std::numeric_limits<double>::quiet_NaN();
        return probe;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.hessian);
    if (eig.info() != Eigen::Success) throw NumericalError("Hessian eigendecomposition failed");
    probe.lambda1 = eig.eigenvalues()[d - 1];
    probe.lambda2 = eig.eigenvalues()[d - 2];

    // Eigen sorts ascending; the last column belongs to lambda1, the ridge tangent.
    Eigen::MatrixXd vectors;
    if (subspace == Subspace::Density) {
        vectors = eig.eigenvectors();
    } else {
        const Eigen::MatrixXd log_hessian =
            m.hessian / m.density - (m.gradient * m.gradient.transpose()) / (m.density * m.density);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> log_eig(log_hessian);
        if (log_eig.info() != Eigen::Success) throw NumericalError("Hessian eigendecomposition failed");
        vectors = log_eig.eigenvectors();
    }
    canonicalize_eigenvector_signs(vectors);
    const auto normal = vectors.leftCols(d - 1);

    probe.displacement = normal * (normal.transpose() * m.mean_shift);
    probe.projected_gradient = normal * (normal.transpose() * m.gradient);
    return probe;
}

Vector scms_step(const KernelModel& model, const Vector& x, Subspace subspace) {
    return x + scms_probe(model, x, subspace).displacement;
}

Matrix build_mesh(const PointCloud& data, const Mesh& mesh) {
    if (mesh.kind == Mesh::Kind::DataPoints) return data.points();

    const std::size_t d = data.dim();
    const std::size_t res = mesh.resolution;
    if (res < 2) throw InputError("grid mesh needs at least 2 points per axis");
    const Vector lo = data.points().colwise().minCoeff().transpose();
    const Vector hi = data.points().colwise().maxCoeff().transpose();

    std::size_t total = 1;
    for (std::size_t k = 0; k < d; ++k) {
        if (total > std::numeric_limits<std::size_t>::max() / res) throw InputError("grid mesh is too large");
        total *= res;
    }
    Matrix out(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        for (std::size_t k = 0; k < d; ++k) {
            const std::size_t step = rest % res;
            rest /= res;
            const double t = static_cast<double>(step) / static_cast<double>(res - 1);
            out(i, k) = lo[k] + t * (hi[k] - lo[k]);
        }
    }
    return out;
}

namespace {

enum class Outcome { Converged, MaxIterations, Diverged, Escaped };

struct Trajectory {
    Outcome outcome = Outcome::MaxIterations;
    RidgePoint point;
    double lambda1 = 0.0;
};

Trajectory run_trajectory(const KernelModel& model, Vector x, const ScmsConfig& cfg, double tol,
                          const Vector& box_lo, const Vector& box_hi) {
    Trajectory t;
    for (std::size_t it = 0; it <= cfg.max_iterations; ++it) {
        ScmsProbe probe;
        try {
            probe = scms_probe(model, x, cfg.subspace);
        } catch (const DivergenceError&) {
            t.outcome = Outcome::Diverged;
            return t;
        }
        const double step = probe.displacement.norm();
        if (step < tol) {
            t.outcome = Outcome::Converged;
            t.point = {x, probe.density, step, probe.lambda2, it, true};
            t.lambda1 = probe.lambda1;
            return t;
        }
        if (it == cfg.max_iterations) break;
        x += probe.displacement;
        if ((x.array() < box_lo.array()).any() || (x.array() > box_hi.array()).any()) {
            t.outcome = Outcome::Escaped;
            return t;
        }
    }
    t.outcome = Outcome::MaxIterations;
    return t;
}

bool eigen_tie(double lambda1, double lambda2) {
    const double scale = std::max(std::abs(lambda1), std::abs(lambda2));
    return lambda1 - lambda2 <= 1e-12 * scale;
}

}  // namespace

RidgeSet extract_ridge(const PointCloud& data, double h, const ScmsConfig& cfg) {
    cfg.validate();
    if (data.dim() < 2) throw InputError("ridge extraction needs at least two dimensions");
    const KernelModel model(data, h);
    const Matrix mesh = build_mesh(data, cfg.mesh);
    const std::size_t count = static_cast<std::size_t>(mesh.rows());
    const double tol = cfg.tolerance * h;

    const Vector box_lo = data.points().colwise().minCoeff().transpose().array() - 3.0 * h;
    const Vector box_hi = data.points().colwise().maxCoeff().transpose().array() + 3.0 * h;

    std::vector<Trajectory> runs(count);
    parallel_for(count, cfg.threads, [&](std::size_t i) {
        runs[i] = run_trajectory(model, mesh.row(static_cast<Eigen::Index>(i)).transpose(), cfg, tol, box_lo,
                                 box_hi);
    });

    std::vector<double> data_density(data.size());
    parallel_for(data.size(), cfg.threads, [&](std::size_t i) { data_density[i] = model.density(data.point(i)); });

    RidgeSet ridge;
    ridge.bandwidth = h;
    ridge.source_size = data.size();
    auto& diag = ridge.diagnostics;
    diag.mesh_size = count;

    double max_density = *std::max_element(data_density.begin(), data_density.end());
    for (const auto& run : runs) {
        switch (run.outcome) {
            case Outcome::Converged:
                ++diag.converged;
                max_density = std::max(max_density, run.point.density);
                break;
            case Outcome::MaxIterations: ++diag.hit_max_iterations; break;
            case Outcome::Diverged: ++diag.diverged; break;
            case Outcome::Escaped: ++diag.escaped; break;
        }
    }
    ridge.density_threshold = cfg.density_threshold_fraction * max_density;

    for (auto& run : runs) {
        if (run.outcome != Outcome::Converged) continue;
        if (eigen_tie(run.lambda1, run.point.lambda2)) {
            ++diag.eigen_ties;
        } else if (!(run.point.lambda2 < 0.0)) {
            ++diag.not_ridge;
        } else if (run.point.density < ridge.density_threshold) {
            ++diag.below_threshold;
        } else {
            ridge.points.push_back(std::move(run.point));
        }
    }
    return ridge;
}

}  // namespace ridgecov
