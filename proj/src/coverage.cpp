#include "ridgecov/coverage.hpp"

#include "ridgecov/errors.hpp"
#include "ridgecov/parallel.hpp"
#include "ridgecov/scms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ridgecov {

namespace {

inline double point_sq_distance(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
    }
    return s;
}

void require_same_dim(const Manifold& a, const Manifold& b) {
    if (a.dim() != b.dim())
        throw ContractError("manifolds live in different dimensions: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
}

}  // namespace

Manifold::Manifold(PointCloud mesh, int intrinsic_dim) : mesh_(std::move(mesh)), intrinsic_dim_(intrinsic_dim) {
    if (intrinsic_dim_ < 0) throw InputError("intrinsic dimension must be nonnegative");
}

Manifold::Manifold(const RidgeSet& ridge) : Manifold(PointCloud(ridge.positions()), 1) {}

double linear_scan_squared_distance(const PointCloud& points, const double* query) {
    const std::size_t d = points.dim();
    const double* base = points.points().data();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) best = std::min(best, point_sq_distance(base + i * d, query, d));
    return best;
}

// Median-split k-d tree over a private copy of the points.
struct NearestNeighborIndex::Tree {
    static constexpr std::size_t kLeafSize = 16;

    struct Node {
        std::size_t begin = 0, end = 0;  // leaf range into coords
        std::size_t split_dim = 0;
        double split_value = 0.0;
        int left = -1, right = -1;
    };

    std::size_t d = 0;
    std::vector<double> coords;  // reordered points, row-major
    std::vector<Node> nodes;

    explicit Tree(const PointCloud& pts) : d(pts.dim()) {
        std::vector<std::size_t> order(pts.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        build(pts, order, 0, order.size());
        coords.reserve(order.size() * d);
        for (std::size_t i : order) {
            const auto r = pts.row(i);
            coords.insert(coords.end(), r.begin(), r.end());
        }
    }

    int build(const PointCloud& pts, std::vector<std::size_t>& order, std::size_t begin, std::size_t end) {
        const int id = static_cast<int>(nodes.size());
        nodes.push_back({begin, end});
        if (end - begin <= kLeafSize) return id;

        std::size_t dim = 0;
        double widest = -1.0;
        for (std::size_t k = 0; k < d; ++k) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t i = begin; i < end; ++i) {
                const double v = pts.row(order[i])[k];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (hi - lo > widest) {
                widest = hi - lo;
                dim = k;
            }
        }
        if (widest <= 0.0) return id;  // all points coincide

        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                         [&](std::size_t a, std::size_t b) { return pts.row(a)[dim] < pts.row(b)[dim]; });
        const double split = pts.row(order[mid])[dim];
        const int left = build(pts, order, begin, mid);
        const int right = build(pts, order, mid, end);
        nodes[id].split_dim = dim;
        nodes[id].split_value = split;
        nodes[id].left = left;
        nodes[id].right = right;
        return id;
    }

    void search(int id, const double* q, double& best) const {
        const Node& node = nodes[id];
        if (node.left < 0) {
            for (std::size_t i = node.begin; i < node.end; ++i)
                best = std::min(best, point_sq_distance(coords.data() + i * d, q, d));
            return;
        }
        // Left holds coordinates <= split, right holds coordinates >= split.
        const double diff = q[node.split_dim] - node.split_value;
        const int near = diff < 0.0 ? node.left : node.right;
        const int far = diff < 0.0 ? node.right : node.left;
        search(near, q, best);
        if (!(diff * diff > best)) search(far, q, best);
    }
};

NearestNeighborIndex::NearestNeighborIndex(const PointCloud& points) : points_(points) {
    if (points_.size() > kLinearScanLimit) tree_ = std::make_unique<Tree>(points_);
}

NearestNeighborIndex::~NearestNeighborIndex() = default;
NearestNeighborIndex::NearestNeighborIndex(NearestNeighborIndex&&) noexcept = default;
NearestNeighborIndex& NearestNeighborIndex::operator=(NearestNeighborIndex&&) noexcept = default;

double NearestNeighborIndex::squared_distance(const double* query) const {
    if (!tree_) return linear_scan_squared_distance(points_, query);
    double best = std::numeric_limits<double>::infinity();
    tree_->search(0, query, best);
    return best;
}

double NearestNeighborIndex::distance(const Vector& query) const {
    if (static_cast<std::size_t>(query.size()) != points_.dim())
        throw ContractError("query dimension does not match the indexed set");
    return std::sqrt(squared_distance(query.data()));
}

double distance_to_set(const Vector& x, const Manifold& set) {
    if (static_cast<std::size_t>(x.size()) != set.dim())
        throw ContractError("query has dimension " + std::to_string(x.size()) + ", set has " +
                            std::to_string(set.dim()));
    if (!x.allFinite()) throw InputError("query point has non-finite coordinates");
    return std::sqrt(linear_scan_squared_distance(set.mesh(), x.data()));
}

std::vector<double> directed_distances(const Manifold& from, const Manifold& to, unsigned threads) {
    require_same_dim(from, to);
    const NearestNeighborIndex index(to.mesh());
    std::vector<double> out(from.size());
    parallel_for(from.size(), threads, [&](std::size_t i) {
        out[i] = std::sqrt(index.squared_distance(from.mesh().row(i).data()));
    });
    return out;
}

std::vector<double> coverage_samples(const Manifold& a, const Manifold& b, Rng& rng, std::size_t max_draws) {
    require_same_dim(a, b);
    if (max_draws == 0 || a.size() <= max_draws) return directed_distances(a, b);
    const NearestNeighborIndex index(b.mesh());
    std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
    std::vector<double> out(max_draws);
    for (auto& w : out) w = std::sqrt(index.squared_distance(a.mesh().row(pick(rng)).data()));
    return out;
}

namespace {

std::vector<double> empirical_cdf(std::vector<double> distances, const std::vector<double>& radii) {
    std::sort(distances.begin(), distances.end());
    std::vector<double> cdf;
    cdf.reserve(radii.size());
    const double m = static_cast<double>(distances.size());
    for (double r : radii) {
        const auto covered = std::upper_bound(distances.begin(), distances.end(), r) - distances.begin();
        cdf.push_back(static_cast<double>(covered) / m);
    }
    return cdf;
}

}  // namespace

CoverageDiagram coverage_cdf(const Manifold& a, const Manifold& b, const std::vector<double>& radii) {
    require_same_dim(a, b);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] >= 0.0) || !std::isfinite(radii[i])) throw InputError("radii must be finite and nonnegative");
        if (i > 0 && !(radii[i] > radii[i - 1])) throw InputError("radii must be strictly increasing");
    }
    CoverageDiagram diagram;
    diagram.radii = radii;
    diagram.cdf_12 = empirical_cdf(directed_distances(a, b), radii);
    diagram.cdf_21 = empirical_cdf(directed_distances(b, a), radii);
    return diagram;
}

LossPair loss_pair(const Manifold& a, const Manifold& b) {
    const auto ab = directed_distances(a, b);
    const auto ba = directed_distances(b, a);
    auto moments = [](const std::vector<double>& w) {
        double s1 = 0.0, s2 = 0.0;
        for (double v : w) {
            s1 += v;
            s2 += v * v;
        }
        const double m = static_cast<double>(w.size());
        return std::pair{s1 / m, s2 / m};
    };
    const auto [ab1, ab2] = moments(ab);
    const auto [ba1, ba2] = moments(ba);
    return {(ab1 + ba1) / 2.0, (ab2 + ba2) / 2.0};
}

double hausdorff(const Manifold& a, const Manifold& b) {
    const auto ab = directed_distances(a, b);
    const auto ba = directed_distances(b, a);
    return std::max(*std::max_element(ab.begin(), ab.end()), *std::max_element(ba.begin(), ba.end()));
}

std::vector<double> linear_radii(double max_radius, std::size_t count) {
    if (count < 2) throw InputError("a radius grid needs at least two points");
    if (!(max_radius > 0.0) || !std::isfinite(max_radius)) throw InputError("maximum radius must be positive");
    std::vector<double> radii(count);
    for (std::size_t i = 0; i < count; ++i)
        radii[i] = max_radius * static_cast<double>(i) / static_cast<double>(count - 1);
    radii.back() = max_radius;
    return radii;
}

}  // namespace ridgecov
