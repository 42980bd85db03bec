#pragma once

#include <forge/annotate/raster.hpp>
#include <forge/core/canonical_json.hpp>
#include <forge/core/enum_names.hpp>
#include <forge/geometry/types.hpp>

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace forge {

enum class AnnotationTemplate { Position, Area, Route };

template <>
struct EnumNames<AnnotationTemplate> {
    static constexpr std::array<std::string_view, 3> names{"position", "area", "route"};
};

// Mark coordinates are pixel-index coordinates: a mark on pixel column i,
// row j reads (i, j). Every extractor returns values in [0, width) x [0, height).

struct PositionMark {
    Pixel pixel = Pixel::Zero();
};

struct AreaMark {
    PixelPolygon polygon;    // implicitly closed, >= 3 vertices
    bool repaired = false;   // replaced by its convex hull after self-intersection
};

struct RouteMark {
    Pixel start = Pixel::Zero();
    std::vector<Pixel> waypoints;  // first waypoint coincides with start
};

using ExtractedAnnotation = std::variant<PositionMark, AreaMark, RouteMark>;

AnnotationTemplate template_of(const ExtractedAnnotation& mark);

struct AnnotatedCanvas {
    RgbImage image;
    std::string element_id;
    AnnotationTemplate kind = AnnotationTemplate::Position;
    std::shared_ptr<const RgbImage> base_map;
};

Json mark_to_json(const ExtractedAnnotation& mark);
ExtractedAnnotation mark_from_json(const Json& doc);

}  // namespace forge
