#pragma once

#include "ridgecov/point_cloud.hpp"
#include "ridgecov/random.hpp"

#include <Eigen/Core>

#include <cstddef>

namespace ridgecov {

enum class Kernel { Gaussian };

/// Everything a single pass over the data yields at one query point.
struct LocalMoments {
    double density = 0.0;
    Vector gradient;
    Eigen::MatrixXd hessian;
    /// Mean-shift vector m(x) - x. Zero when every kernel weight underflowed.
    Vector mean_shift;
    /// Sum of unnormalized kernel weights; 0 means x is numerically outside the support.
    double weight_sum = 0.0;
};

/// Gaussian kernel density estimate with an isotropic bandwidth.
///
/// Every evaluation is an exact O(n) sum over the data; the model is immutable
/// and safe to share between threads.
class KernelModel {
public:
    KernelModel(PointCloud data, double bandwidth, Kernel kernel = Kernel::Gaussian);

    const PointCloud& data() const { return data_; }
    double bandwidth() const { return bandwidth_; }
    Kernel kernel() const { return kernel_; }
    std::size_t dim() const { return data_.dim(); }

    double density(const Vector& x) const;
    Vector gradient(const Vector& x) const;
    Eigen::MatrixXd hessian(const Vector& x) const;

    /// density, gradient, Hessian and mean shift from one kernel sum.
    LocalMoments moments(const Vector& x) const;

    /// Draws m points from the estimate itself: a uniformly chosen data point
    /// plus bandwidth-scaled standard Gaussian noise.
    PointCloud sample_smoothed(std::size_t m, Rng& rng) const;

private:
    void check_query(const Vector& x) const;

    PointCloud data_;
    double bandwidth_;
    Kernel kernel_;
    double norm_;  // (2 pi)^{-d/2} / (n h^d)
};

/// Silverman's multivariate rule, sigma * (4 / ((d + 2) n))^{1 / (d + 4)}, with
/// sigma the mean of the per-coordinate sample standard deviations.
double normal_reference_bandwidth(const PointCloud& data);

}  // namespace ridgecov
