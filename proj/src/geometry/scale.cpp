#include <forge/core/error.hpp>
#include <forge/geometry/scale.hpp>

#include <cmath>

namespace forge {

double nominal_height(SizeClass size)
{
    switch (size) {
    case SizeClass::Small: return 0.5;
    case SizeClass::Medium: return 2.0;
    case SizeClass::Large: return 8.0;
    case SizeClass::Unknown: return 2.0;
    }
    return 2.0;
}

double compute_scale(const MeshBounds& bounds, SizeClass size)
{
    const auto e = bounds.extent();
    if (!e.allFinite() || !(e.x() > 0) || !(e.y() > 0) || !(e.z() > 0))
        throw Error(ErrorCode::DegenerateMesh, "mesh bounds have a non-positive extent");
    return nominal_height(size) / bounds.vertical_extent();
}

}  // namespace forge
