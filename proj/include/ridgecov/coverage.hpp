#pragma once

#include "ridgecov/point_cloud.hpp"
#include "ridgecov/random.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace ridgecov {

struct RidgeSet;

/// A set discretized by a mesh of points. The uniform law on the set is
/// approximated by the uniform law on the mesh points.
class Manifold {
public:
    explicit Manifold(PointCloud mesh, int intrinsic_dim = 1);
    explicit Manifold(const RidgeSet& ridge);

    const PointCloud& mesh() const { return mesh_; }
    std::size_t size() const { return mesh_.size(); }
    std::size_t dim() const { return mesh_.dim(); }
    int intrinsic_dim() const { return intrinsic_dim_; }

private:
    PointCloud mesh_;
    int intrinsic_dim_;
};

/// Exact nearest-point queries against a fixed point set. Sets larger than
/// kLinearScanLimit are indexed by a k-d tree; answers are bit-identical to a
/// linear scan either way.
class NearestNeighborIndex {
public:
    static constexpr std::size_t kLinearScanLimit = 1024;

    explicit NearestNeighborIndex(const PointCloud& points);
    ~NearestNeighborIndex();
    NearestNeighborIndex(NearestNeighborIndex&&) noexcept;
    NearestNeighborIndex& operator=(NearestNeighborIndex&&) noexcept;

    double squared_distance(const double* query) const;
    double distance(const Vector& query) const;
    bool uses_tree() const { return tree_ != nullptr; }

private:
    struct Tree;
    PointCloud points_;
    std::unique_ptr<Tree> tree_;
};

/// Reference implementation: squared distance from query to the nearest row by brute force.
double linear_scan_squared_distance(const PointCloud& points, const double* query);

struct CoverageDiagram {
    std::vector<double> radii;
    /// Fraction of the first set within r of the second.
    std::vector<double> cdf_12;
    /// Fraction of the second set within r of the first.
    std::vector<double> cdf_21;
};

struct LossPair {
    double loss1 = 0.0;
    double loss2 = 0.0;
};

/// Euclidean distance from x to the nearest mesh point of `set`.
double distance_to_set(const Vector& x, const Manifold& set);

/// d(a_i, B) for every mesh point a_i of A, in A's order.
std::vector<double> directed_distances(const Manifold& from, const Manifold& to, unsigned threads = 1);

/// Coverage random variable draws d(U_A, B). When A has at most max_draws
/// mesh points every point is used once in mesh order; otherwise max_draws
/// mesh points are drawn uniformly with replacement.
std::vector<double> coverage_samples(const Manifold& a, const Manifold& b, Rng& rng, std::size_t max_draws = 1000);

/// Empirical CDFs of both coverage variables over all mesh points.
CoverageDiagram coverage_cdf(const Manifold& a, const Manifold& b, const std::vector<double>& radii);

/// Symmetrized mean (loss1) and mean squared (loss2) projection distance.
LossPair loss_pair(const Manifold& a, const Manifold& b);

double hausdorff(const Manifold& a, const Manifold& b);

/// count evenly spaced radii from 0 to max_radius inclusive.
std::vector<double> linear_radii(double max_radius, std::size_t count);

}  // namespace ridgecov
