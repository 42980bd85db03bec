#pragma once

#include <forge/core/error.hpp>
#include <forge/geometry/types.hpp>

#include <string>

namespace forge {

/// North-up orthographic top-down camera. Pixel (u, v) in continuous
/// coordinates spans [0, width] x [0, height]; v grows southward.
template <typename Scalar>
struct OrthoCamera {
    Scalar center_east = 0;
    Scalar center_north = 0;
    Scalar extent_east = 200;
    Scalar extent_north = 200;
    int image_width = 2048;
    int image_height = 2048;

    bool operator==(const OrthoCamera&) const = default;

    void check() const
    {
        if (!(extent_east > 0) || !(extent_north > 0) || image_width < 1 || image_height < 1)
            throw Error(ErrorCode::InvalidArgument, "camera extents must be positive and image at least 1x1");
    }

    bool in_frame(const Vector2<Scalar>& px) const
    {
        return px.x() >= 0 && px.x() <= image_width && px.y() >= 0 && px.y() <= image_height;
    }

    Scalar meters_per_pixel_east() const { return extent_east / image_width; }
    Scalar meters_per_pixel_north() const { return extent_north / image_height; }

    bool contains_ground(const Vector2<Scalar>& g) const
    {
        return g.x() >= center_east - extent_east / 2 && g.x() <= center_east + extent_east / 2 &&
               g.y() >= center_north - extent_north / 2 && g.y() <= center_north + extent_north / 2;
    }
};

using OrthoCameraSpec = OrthoCamera<double>;

template <typename Scalar>
Vector2<Scalar> pixel_to_ground(const Vector2<Scalar>& px, const OrthoCamera<Scalar>& cam)
{
    if (!cam.in_frame(px))
        throw Error(ErrorCode::OutOfFrame, "pixel (" + std::to_string(double(px.x())) + ", " +
                                               std::to_string(double(px.y())) + ") outside the camera frame");
    const Scalar east = cam.center_east + (px.x() / cam.image_width - Scalar(0.5)) * cam.extent_east;
    const Scalar north = cam.center_north + (Scalar(0.5) - px.y() / cam.image_height) * cam.extent_north;
    return {east, north};
}

/// Exact algebraic inverse of pixel_to_ground; no frame check.
template <typename Scalar>
Vector2<Scalar> ground_to_pixel(const Vector2<Scalar>& ground, const OrthoCamera<Scalar>& cam)
{
    const Scalar u = ((ground.x() - cam.center_east) / cam.extent_east + Scalar(0.5)) * cam.image_width;
    const Scalar v = (Scalar(0.5) - (ground.y() - cam.center_north) / cam.extent_north) * cam.image_height;
    return {u, v};
}

}  // namespace forge
