#pragma once

#include <forge/core/model.hpp>
#include <forge/geometry/types.hpp>

namespace forge {

/// Axis-aligned bounds in mesh units; +Y is up (glTF convention).
struct MeshBounds {
    Vector3<double> min = Vector3<double>::Zero();
    Vector3<double> max = Vector3<double>::Zero();

    Vector3<double> extent() const { return max - min; }
    double vertical_extent() const { return max.y() - min.y(); }
};

/// Real-world height in meters assumed for each size class.
double nominal_height(SizeClass size);

/// Uniform factor that brings the mesh's vertical extent to the nominal
/// height of `size`. Throws DegenerateMesh when any extent is not positive.
double compute_scale(const MeshBounds& bounds, SizeClass size);

}  // namespace forge
