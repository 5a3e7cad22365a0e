#pragma once

// Test-only oracles and generators. Nothing here calls into the code paths
// it is used to check, apart from the public entry points being compared.

#include "ridgecov/point_cloud.hpp"
#include "ridgecov/random.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace ridgecov::testing {

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) = g(rng);
    return m;
}

inline Vector random_vector(std::size_t d, Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Vector v(d);
    for (auto& x : v) x = g(rng);
    return v;
}

/// Direct Gaussian KDE sum written from the textbook formula.
inline double brute_force_density(const Matrix& data, double h, const Vector& x) {
    const double d = static_cast<double>(data.cols());
    double sum = 0.0;
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        double prod = 1.0;
        for (Eigen::Index k = 0; k < data.cols(); ++k) {
            const double u = (x[k] - data(i, k)) / h;
            prod *= std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
        }
        sum += prod;
    }
    return sum / (static_cast<double>(data.rows()) * std::pow(h, d));
}

/// Central differences of a scalar field.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double step) {
    Vector g(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        Vector xp = x, xm = x;
        xp[k] += step;
        xm[k] -= step;
        g[k] = (f(xp) - f(xm)) / (2.0 * step);
    }
    return g;
}

/// Central differences of a vector field; column k holds d/dx_k.
inline Eigen::MatrixXd fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x, double step) {
    Eigen::MatrixXd j(x.size(), x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        Vector xp = x, xm = x;
        xp[k] += step;
        xm[k] -= step;
        j.col(k) = (f(xp) - f(xm)) / (2.0 * step);
    }
    return j;
}

/// Exhaustive min over rows of Euclidean distance, straight from the definition.
inline double brute_distance(const Matrix& set, const Vector& x) {
    double best = INFINITY;
    for (Eigen::Index i = 0; i < set.rows(); ++i) best = std::min(best, (set.row(i).transpose() - x).norm());
    return best;
}

inline double brute_hausdorff(const Matrix& a, const Matrix& b) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) h = std::max(h, brute_distance(b, a.row(i).transpose()));
    for (Eigen::Index i = 0; i < b.rows(); ++i) h = std::max(h, brute_distance(a, b.row(i).transpose()));
    return h;
}

/// Points on a circle of the given radius, equally spaced in angle.
inline Matrix circle_mesh(double radius, std::size_t m, double phase = 0.0) {
    Matrix c(m, 2);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = phase + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
        c(i, 0) = radius * std::cos(t);
        c(i, 1) = radius * std::sin(t);
    }
    return c;
}

/// Ring sample: radius plus Gaussian radial/tangential noise.
inline Matrix ring_sample(std::size_t n, double radius, double sigma, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> g(0.0, sigma);
    Matrix m(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = angle(rng);
        m(i, 0) = radius * std::cos(t) + g(rng);
        m(i, 1) = radius * std::sin(t) + g(rng);
    }
    return m;
}

}  // namespace ridgecov::testing
