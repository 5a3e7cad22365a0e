#include "ridgecov/point_cloud.hpp"

#include "ridgecov/errors.hpp"

#include <string>

namespace ridgecov {

PointCloud::PointCloud(Matrix points) : points_(std::move(points)) {
    if (points_.rows() < 1 || points_.cols() < 1)
        throw InputError("point cloud needs at least one point and one dimension");
    if (!points_.allFinite())
        throw InputError("point cloud contains non-finite coordinates");
}

PointCloud PointCloud::translated(const Vector& offset) const {
    if (static_cast<std::size_t>(offset.size()) != dim())
        throw ContractError("translation offset has dimension " + std::to_string(offset.size()) +
                            ", cloud has " + std::to_string(dim()));
    Matrix moved = points_;
    moved.rowwise() += offset.transpose();
    return PointCloud(std::move(moved));
}

bool all_finite(const Vector& x) { return x.allFinite(); }

}  // namespace ridgecov
