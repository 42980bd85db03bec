#pragma once

#include <forge/annotate/marks.hpp>

namespace forge {

enum class MarkColor { Red, Blue };

/// Strict RGB band: red is R >= 200, G <= 80, B <= 80; blue is B >= 200,
/// R <= 80, G <= 80. Gray pixels (R = G = B) can never fall in either band.
Mask threshold_mask(const RgbImage& image, MarkColor color);

/// 8-connected component labelling. labels(v, u) is 0 for background and
/// k + 1 for the k-th component in raster-scan discovery order.
struct Components {
    Plane<int> labels;
    std::vector<std::size_t> sizes;
    std::vector<Pixel> centroids;  // mean pixel index of each component

    std::size_t count() const { return sizes.size(); }
    /// Index of the largest component (first one on ties).
    std::size_t largest() const;
};

Components connected_components(const Mask& mask);

/// Morphological closing with a disk of the given radius.
Mask close_mask(const Mask& mask, int radius);

struct AreaOptions {
    int closing_radius = 4;
    double simplify_tolerance = 2.0;
};

struct RouteOptions {
    int waypoint_count = 16;
    double search_radius = 24.0;   // 3x the nominal 8 px path width
    double visit_radius = 12.0;
    double snap_radius = 8.0;      // centerline refinement of each visited point
    double loop_distance = 16.0;
    double min_coverage = 0.7;
};

PositionMark extract_position(const AnnotatedCanvas& canvas);
AreaMark extract_area(const AnnotatedCanvas& canvas, const AreaOptions& options = {});
RouteMark extract_route(const AnnotatedCanvas& canvas, const RouteOptions& options = {});

/// Runs the extractor matching `canvas.kind`.
ExtractedAnnotation extract_mark(const AnnotatedCanvas& canvas);

/// Normalized cross-correlation of canvas and base map luma over pixels
/// not covered by red/blue marks, clamped to [0, 1].
double verify_canvas_alignment(const AnnotatedCanvas& canvas);

inline constexpr double kAlignmentThreshold = 0.7;

}  // namespace forge
