#include <forge/geometry/projection.hpp>

namespace forge {

ProjectedAnnotation project_annotation(const ExtractedAnnotation& mark, const OrthoCameraSpec& cam,
                                       const TerrainModel& terrain)
{
    cam.check();
    auto drop = [&](const Pixel& p) { return drop_to_terrain(p, cam, terrain); };
    return std::visit(
        [&](const auto& m) -> ProjectedAnnotation {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PositionMark>) {
                return ProjectedPosition{drop(m.pixel)};
            } else if constexpr (std::is_same_v<T, AreaMark>) {
                ProjectedArea area;
                for (const auto& p : m.polygon)
                    area.polygon.push_back(drop(p));
                return area;
            } else {
                ProjectedRoute route;
                for (const auto& p : m.waypoints)
                    route.waypoints.push_back(drop(p));
                return route;
            }
        },
        mark);
}

}  // namespace forge
