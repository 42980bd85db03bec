#pragma once

#include <Eigen/Core>

#include <vector>

namespace forge {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// Continuous image coordinates (u right, v down), in pixels.
using Pixel = Vector2<double>;
/// Ground-plane coordinates (east, north), in meters.
using GroundPoint = Vector2<double>;
/// Local east-north-up coordinates anchored at the event location, in meters.
using WorldPoint = Vector3<double>;

using PixelPolygon = std::vector<Pixel>;
using WorldPolygon = std::vector<WorldPoint>;

}  // namespace forge
