#pragma once

#include <forge/annotate/marks.hpp>
#include <forge/geometry/camera.hpp>
#include <forge/geometry/terrain.hpp>

#include <variant>

namespace forge {

struct ProjectedPosition {
    WorldPoint point = WorldPoint::Zero();
};

struct ProjectedArea {
    WorldPolygon polygon;
};

struct ProjectedRoute {
    std::vector<WorldPoint> waypoints;
};

using ProjectedAnnotation = std::variant<ProjectedPosition, ProjectedArea, ProjectedRoute>;

/// Drops a pixel straight down through the orthographic camera onto the
/// terrain: ground position from the camera, height from the heightfield.
inline WorldPoint drop_to_terrain(const Pixel& px, const OrthoCameraSpec& cam, const TerrainModel& terrain)
{
    const GroundPoint g = pixel_to_ground(px, cam);
    return {g.x(), g.y(), terrain.height(g)};
}

/// Throws OutOfFrame if any mark coordinate lies outside the camera frame.
ProjectedAnnotation project_annotation(const ExtractedAnnotation& mark, const OrthoCameraSpec& cam,
                                       const TerrainModel& terrain);

}  // namespace forge
