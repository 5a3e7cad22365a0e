#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>

namespace ridgecov {

/// Row-major so that each point is a contiguous run of d doubles.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// n points in d dimensions. Never empty, every coordinate finite.
class PointCloud {
public:
    explicit PointCloud(Matrix points);

    std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(points_.cols()); }

    const Matrix& points() const { return points_; }

    std::span<const double> row(std::size_t i) const {
        return {points_.data() + i * dim(), dim()};
    }
    Vector point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)).transpose(); }

    /// Same cloud shifted by `offset`.
    PointCloud translated(const Vector& offset) const;

private:
    Matrix points_;
};

bool all_finite(const Vector& x);

}  // namespace ridgecov
