#include "ridgecov/kde.hpp"

#include "ridgecov/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace ridgecov {

namespace {

// exp(-t) is exactly 0 in double precision beyond this.
constexpr double kExpUnderflow = 745.2;

enum class Order { Value, Gradient, Hessian };

struct KernelSums {
    double s0 = 0.0;
    std::vector<double> s1;  // sum w * delta
    std::vector<double> s2;  // sum w * delta delta^T, full d x d
};

// Dim is the compile-time dimension or 0 for the dynamic fallback.
template <int Dim, Order order>
KernelSums kernel_sums(const PointCloud& data, const Vector& x, double h) {
    const std::size_t n = data.size();
    const int d = Dim > 0 ? Dim : static_cast<int>(data.dim());
    const double inv_h = 1.0 / h;
    const double* base = data.points().data();

    KernelSums sums;
    sums.s1.assign(order >= Order::Gradient ? d : 0, 0.0);
    sums.s2.assign(order >= Order::Hessian ? d * d : 0, 0.0);
    double delta[Dim > 0 ? Dim : 1];
    std::vector<double> delta_dyn(Dim > 0 ? 0 : d);
    double* dl = Dim > 0 ? delta : delta_dyn.data();

    for (std::size_t i = 0; i < n; ++i) {
        const double* p = base + i * d;
        double r2 = 0.0;
        for (int k = 0; k < d; ++k) {
            dl[k] = p[k] - x[k];
            const double u = dl[k] * inv_h;
            r2 += u * u;
        }
        const double t = 0.5 * r2;
        if (t > kExpUnderflow) continue;
        const double w = std::exp(-t);
        sums.s0 += w;
        if constexpr (order >= Order::Gradient) {
            for (int k = 0; k < d; ++k) sums.s1[k] += w * dl[k];
        }
        if constexpr (order >= Order::Hessian) {
            for (int a = 0; a < d; ++a)
                for (int b = a; b < d; ++b) sums.s2[a * d + b] += w * dl[a] * dl[b];
        }
    }
    if constexpr (order >= Order::Hessian) {
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < a; ++b) sums.s2[a * d + b] = sums.s2[b * d + a];
    }
    return sums;
}

template <Order order>
KernelSums dispatch(const PointCloud& data, const Vector& x, double h) {
    switch (data.dim()) {
        case 1: return kernel_sums<1, order>(data, x, h);
        case 2: return kernel_sums<2, order>(data, x, h);
        case 3: return kernel_sums<3, order>(data, x, h);
        default: return kernel_sums<0, order>(data, x, h);
    }
}

}  // namespace

KernelModel::KernelModel(PointCloud data, double bandwidth, Kernel kernel)
    : data_(std::move(data)), bandwidth_(bandwidth), kernel_(kernel) {
    if (!(bandwidth_ > 0.0) || !std::isfinite(bandwidth_))
        throw InputError("bandwidth must be positive and finite, got " + std::to_string(bandwidth_));
    const double d = static_cast<double>(data_.dim());
    norm_ = std::pow(2.0 * std::numbers::pi, -0.5 * d) /
            (static_cast<double>(data_.size()) * std::pow(bandwidth_, d));
}

void KernelModel::check_query(const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != dim())
        throw ContractError("query has dimension " + std::to_string(x.size()) + ", model has " +
                            std::to_string(dim()));
    if (!x.allFinite()) throw InputError("query point has non-finite coordinates");
}

double KernelModel::density(const Vector& x) const {
    check_query(x);
    return norm_ * dispatch<Order::Value>(data_, x, bandwidth_).s0;
}

Vector KernelModel::gradient(const Vector& x) const {
    check_query(x);
    const auto sums = dispatch<Order::Gradient>(data_, x, bandwidth_);
    const double scale = norm_ / (bandwidth_ * bandwidth_);
    Vector g(dim());
    for (std::size_t k = 0; k < dim(); ++k) g[k] = scale * sums.s1[k];
    return g;
}

Eigen::MatrixXd KernelModel::hessian(const Vector& x) const { return moments(x).hessian; }

LocalMoments KernelModel::moments(const Vector& x) const {
    check_query(x);
    const auto sums = dispatch<Order::Hessian>(data_, x, bandwidth_);
    const auto d = static_cast<Eigen::Index>(dim());
    const double h2 = bandwidth_ * bandwidth_;
    const double scale = norm_ / h2;

    LocalMoments m;
    m.weight_sum = sums.s0;
    m.density = norm_ * sums.s0;
    m.gradient.resize(d);
    m.mean_shift.resize(d);
    m.hessian.resize(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        m.gradient[a] = scale * sums.s1[a];
        m.mean_shift[a] = sums.s0 > 0.0 ? sums.s1[a] / sums.s0 : 0.0;
        for (Eigen::Index b = 0; b < d; ++b) {
            const double diag = a == b ? sums.s0 : 0.0;
            m.hessian(a, b) = scale * (sums.s2[a * d + b] / h2 - diag);
        }
    }
    return m;
}

PointCloud KernelModel::sample_smoothed(std::size_t m, Rng& rng) const {
    if (m < 1) throw InputError("smoothed bootstrap needs at least one draw");
    const std::size_t d = dim();
    std::uniform_int_distribution<std::size_t> pick(0, data_.size() - 1);
    std::normal_distribution<double> noise(0.0, 1.0);
    Matrix out(m, d);
    for (std::size_t i = 0; i < m; ++i) {
        const auto src = data_.row(pick(rng));
        for (std::size_t k = 0; k < d; ++k) out(i, k) = src[k] + bandwidth_ * noise(rng);
    }
    return PointCloud(std::move(out));
}

double normal_reference_bandwidth(const PointCloud& data) {
    const std::size_t n = data.size();
    const std::size_t d = data.dim();
    if (n < 2) throw InputError("normal reference rule needs at least two points");
    const auto& pts = data.points();
    double sigma = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const auto col = pts.col(k);
        const double mean = col.mean();
        const double ss = (col.array() - mean).square().sum();
        sigma += std::sqrt(ss / static_cast<double>(n - 1));
    }
    sigma /= static_cast<double>(d);
    if (!(sigma > 0.0)) throw InputError("normal reference rule: data has zero variance in every coordinate");
    const double dd = static_cast<double>(d);
    return sigma * std::pow(4.0 / ((dd + 2.0) * static_cast<double>(n)), 1.0 / (dd + 4.0));
}

}  // namespace ridgecov
