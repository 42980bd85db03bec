#pragma once

#include <forge/annotate/raster.hpp>
#include <forge/geometry/camera.hpp>
#include <forge/geometry/terrain.hpp>

namespace forge {

/// Grayscale orthographic top-down render of the terrain: hillshade lit from
/// the north-west, 5 m contour lines, and a world-anchored ground texture.
/// The light direction makes the render orientation-distinguishable.
RgbImage render_base_map(const TerrainModel& terrain, const OrthoCameraSpec& cam);

}  // namespace forge
