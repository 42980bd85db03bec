#include <forge/annotate/extract.hpp>
#include <forge/core/error.hpp>
#include <forge/geometry/polygon.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <type_traits>
#include <variant>

namespace forge {

Mask threshold_mask(const RgbImage& image, MarkColor color)
{
    const auto r = image.r.cast<int>();
    const auto g = image.g.cast<int>();
    const auto b = image.b.cast<int>();
    if (color == MarkColor::Red)
        return (r >= 200) && (g <= 80) && (b <= 80);
    return (b >= 200) && (r <= 80) && (g <= 80);
}

std::size_t Components::largest() const
{
    return static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
}

namespace {

constexpr std::array<std::array<int, 2>, 8> kNeighbors8{{{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};

struct Box {
    int u0, v0, u1, v1;  // inclusive
};

std::optional<Box> bounding_box(const Mask& mask)
{
    Box box{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), -1, -1};
    for (Eigen::Index v = 0; v < mask.rows(); ++v) {
        if (!mask.row(v).any())
            continue;
        box.v0 = std::min<int>(box.v0, static_cast<int>(v));
        box.v1 = static_cast<int>(v);
        for (Eigen::Index u = 0; u < mask.cols(); ++u)
            if (mask(v, u)) {
                box.u0 = std::min<int>(box.u0, static_cast<int>(u));
                box.u1 = std::max<int>(box.u1, static_cast<int>(u));
            }
    }
    if (box.v1 < 0)
        return std::nullopt;
    return box;
}

std::vector<std::array<int, 2>> disk_offsets(int radius)
{
    std::vector<std::array<int, 2>> out;
    for (int dv = -radius; dv <= radius; ++dv)
        for (int du = -radius; du <= radius; ++du)
            if (du * du + dv * dv <= radius * radius)
                out.push_back({du, dv});
    return out;
}

Mask dilate(const Mask& mask, const std::vector<std::array<int, 2>>& disk)
{
    Mask out = Mask::Constant(mask.rows(), mask.cols(), false);
    for (Eigen::Index v = 0; v < mask.rows(); ++v)
        for (Eigen::Index u = 0; u < mask.cols(); ++u) {
            if (!mask(v, u))
                continue;
            for (const auto& [du, dv] : disk) {
                const Eigen::Index uu = u + du, vv = v + dv;
                if (uu >= 0 && vv >= 0 && uu < mask.cols() && vv < mask.rows())
                    out(vv, uu) = true;
            }
        }
    return out;
}

Mask erode(const Mask& mask, const std::vector<std::array<int, 2>>& disk)
{
    Mask out = Mask::Constant(mask.rows(), mask.cols(), false);
    for (Eigen::Index v = 0; v < mask.rows(); ++v)
        for (Eigen::Index u = 0; u < mask.cols(); ++u) {
            if (!mask(v, u))
                continue;
            bool keep = true;
            for (const auto& [du, dv] : disk) {
                const Eigen::Index uu = u + du, vv = v + dv;
                if (uu < 0 || vv < 0 || uu >= mask.cols() || vv >= mask.rows() || !mask(vv, uu)) {
                    keep = false;
                    break;
                }
            }
            out(v, u) = keep;
        }
    return out;
}

/// Fills every background pixel not 4-connected to the mask border.
Mask fill_holes(const Mask& region)
{
    const Eigen::Index rows = region.rows(), cols = region.cols();
    Mask outside = Mask::Constant(rows, cols, false);
    std::deque<std::array<Eigen::Index, 2>> queue;
    auto seed = [&](Eigen::Index u, Eigen::Index v) {
        if (!region(v, u) && !outside(v, u)) {
            outside(v, u) = true;
            queue.push_back({u, v});
        }
    };
    for (Eigen::Index u = 0; u < cols; ++u) {
        seed(u, 0);
        seed(u, rows - 1);
    }
    for (Eigen::Index v = 0; v < rows; ++v) {
        seed(0, v);
        seed(cols - 1, v);
    }
    constexpr std::array<std::array<int, 2>, 4> n4{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    while (!queue.empty()) {
        const auto [u, v] = queue.front();
        queue.pop_front();
        for (const auto& [du, dv] : n4) {
            const Eigen::Index uu = u + du, vv = v + dv;
            if (uu >= 0 && vv >= 0 && uu < cols && vv < rows)
                seed(uu, vv);
        }
    }
    return !outside;
}

/// Moore-neighbour boundary trace of the region containing its first
/// raster-order pixel; stops when the first move would repeat.
std::vector<Pixel> trace_outer_boundary(const Mask& region)
{
    // clockwise on screen (v down), starting west
    constexpr std::array<std::array<int, 2>, 8> ring{{{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};
    auto inside = [&](int u, int v) {
        return u >= 0 && v >= 0 && u < region.cols() && v < region.rows() && region(v, u);
    };
    auto dir_of = [&](int du, int dv) {
        for (int k = 0; k < 8; ++k)
            if (ring[k][0] == du && ring[k][1] == dv)
                return k;
        return 0;
    };

    int su = -1, sv = -1;
    for (int v = 0; v < region.rows() && su < 0; ++v)
        for (int u = 0; u < region.cols(); ++u)
            if (region(v, u)) {
                su = u;
                sv = v;
                break;
            }
    std::vector<Pixel> contour;
    if (su < 0)
        return contour;
    contour.emplace_back(su, sv);

    int pu = su, pv = sv;
    int back = 0;  // west of the first pixel is outside by construction
    auto next_step = [&](int u, int v, int from) {
        for (int k = 1; k <= 8; ++k) {
            const int d = (from + k) % 8;
            if (inside(u + ring[d][0], v + ring[d][1]))
                return d;
        }
        return -1;
    };
    const int first = next_step(pu, pv, back);
    if (first < 0)
        return contour;  // isolated pixel
    const int fu = su + ring[first][0], fv = sv + ring[first][1];

    const std::size_t cap = static_cast<std::size_t>(region.count()) * 4 + 16;
    for (std::size_t step = 0; step < cap; ++step) {
        const int found = next_step(pu, pv, back);
        const int prev = (found + 7) % 8;
        const int bu = pu + ring[prev][0], bv = pv + ring[prev][1];
        pu += ring[found][0];
        pv += ring[found][1];
        back = dir_of(bu - pu, bv - pv);
        if (pu == su && pv == sv) {
            // closed once leaving the start would repeat the first move
            const int again = next_step(pu, pv, back);
            if (su + ring[again][0] == fu && sv + ring[again][1] == fv)
                break;
        }
        contour.emplace_back(pu, pv);
    }
    return contour;
}

}  // namespace

Components connected_components(const Mask& mask)
{
    Components out;
    out.labels = Plane<int>::Zero(mask.rows(), mask.cols());
    std::vector<std::array<Eigen::Index, 2>> stack;
    for (Eigen::Index v = 0; v < mask.rows(); ++v) {
        for (Eigen::Index u = 0; u < mask.cols(); ++u) {
            if (!mask(v, u) || out.labels(v, u) != 0)
                continue;
            const int label = static_cast<int>(out.sizes.size()) + 1;
            std::size_t size = 0;
            double su = 0, sv = 0;
            out.labels(v, u) = label;
            stack.push_back({u, v});
            while (!stack.empty()) {
                const auto [cu, cv] = stack.back();
                stack.pop_back();
                ++size;
                su += double(cu);
                sv += double(cv);
                for (const auto& [du, dv] : kNeighbors8) {
                    const Eigen::Index nu = cu + du, nv = cv + dv;
                    if (nu >= 0 && nv >= 0 && nu < mask.cols() && nv < mask.rows() && mask(nv, nu) &&
                        out.labels(nv, nu) == 0) {
                        out.labels(nv, nu) = label;
                        stack.push_back({nu, nv});
                    }
                }
            }
            out.sizes.push_back(size);
            out.centroids.emplace_back(su / double(size), sv / double(size));
        }
    }
    return out;
}

Mask close_mask(const Mask& mask, int radius)
{
    const auto disk = disk_offsets(radius);
    return erode(dilate(mask, disk), disk);
}

PositionMark extract_position(const AnnotatedCanvas& canvas)
{
    const auto comps = connected_components(threshold_mask(canvas.image, MarkColor::Red));
    if (comps.count() == 0)
        throw Error(ErrorCode::NoMark, "no red pixels on canvas '" + canvas.element_id + "'");
    const std::size_t best = comps.largest();
    for (std::size_t k = 0; k < comps.count(); ++k)
        if (k != best && double(comps.sizes[k]) >= 0.9 * double(comps.sizes[best]))
            throw Error(ErrorCode::AmbiguousMark, "canvas '" + canvas.element_id + "' has " +
                                                      std::to_string(comps.count()) +
                                                      " red marks of comparable size");
    return {comps.centroids[best]};
}

AreaMark extract_area(const AnnotatedCanvas& canvas, const AreaOptions& options)
{
    const Mask red = threshold_mask(canvas.image, MarkColor::Red);
    const auto box = bounding_box(red);
    if (!box)
        throw Error(ErrorCode::NoMark, "no red pixels on canvas '" + canvas.element_id + "'");

    // work on a crop padded so closing never touches the crop border
    const int pad = options.closing_radius + 2;
    const int u0 = box->u0 - pad, v0 = box->v0 - pad;
    const int w = box->u1 - box->u0 + 1 + 2 * pad, h = box->v1 - box->v0 + 1 + 2 * pad;
    Mask crop = Mask::Constant(h, w, false);
    crop.block(pad, pad, h - 2 * pad, w - 2 * pad) = red.block(box->v0, box->u0, h - 2 * pad, w - 2 * pad);

    const Mask closed = close_mask(crop, options.closing_radius);
    const auto comps = connected_components(closed);
    if (comps.count() == 0)
        throw Error(ErrorCode::DegenerateArea, "closing removed every mark on '" + canvas.element_id + "'");
    const int label = static_cast<int>(comps.largest()) + 1;
    const Mask region = fill_holes(comps.labels == label);

    auto boundary = trace_outer_boundary(region);
    auto polygon = simplify_ring(boundary, options.simplify_tolerance);
    if (polygon.size() < 3)
        throw Error(ErrorCode::DegenerateArea, "area mark on '" + canvas.element_id + "' simplifies to " +
                                                   std::to_string(polygon.size()) + " vertices");
    AreaMark mark;
    if (!polygon_is_simple(polygon)) {
        polygon = convex_hull(polygon);
        mark.repaired = true;
    }
    if (polygon.size() < 3 || polygon_area(polygon) <= 0)
        throw Error(ErrorCode::DegenerateArea, "area mark on '" + canvas.element_id + "' has zero area");

    const Pixel offset(u0, v0);
    for (auto& p : polygon)
        p += offset;
    mark.polygon = std::move(polygon);
    return mark;
}

namespace {

/// Red pixels bucketed on a coarse grid for radius queries.
class PixelIndex {
public:
    PixelIndex(const Mask& mask, double cell) : cell_(std::max(1, static_cast<int>(std::ceil(cell))))
    {
        cols_ = static_cast<int>(mask.cols()) / cell_ + 1;
        rows_ = static_cast<int>(mask.rows()) / cell_ + 1;
        buckets_.resize(static_cast<std::size_t>(cols_) * rows_);
        for (Eigen::Index v = 0; v < mask.rows(); ++v)
            for (Eigen::Index u = 0; u < mask.cols(); ++u)
                if (mask(v, u)) {
                    const auto idx = static_cast<int>(points_.size());
                    points_.emplace_back(double(u), double(v));
                    bucket(static_cast<int>(u) / cell_, static_cast<int>(v) / cell_).push_back(idx);
                }
    }

    const std::vector<Pixel>& points() const { return points_; }

    /// Visits indices (ascending within each bucket) of points within `radius` of `c`.
    template <typename Fn>
    void for_each_within(const Pixel& c, double radius, Fn&& fn) const
    {
        const int bu0 = std::max(0, static_cast<int>(std::floor((c.x() - radius) / cell_)));
        const int bu1 = std::min(cols_ - 1, static_cast<int>(std::floor((c.x() + radius) / cell_)));
        const int bv0 = std::max(0, static_cast<int>(std::floor((c.y() - radius) / cell_)));
        const int bv1 = std::min(rows_ - 1, static_cast<int>(std::floor((c.y() + radius) / cell_)));
        const double r2 = radius * radius;
        for (int bv = bv0; bv <= bv1; ++bv)
            for (int bu = bu0; bu <= bu1; ++bu)
                for (int idx : buckets_[static_cast<std::size_t>(bv) * cols_ + bu])
                    if ((points_[idx] - c).squaredNorm() <= r2)
                        fn(idx);
    }

private:
    std::vector<int>& bucket(int bu, int bv) { return buckets_[static_cast<std::size_t>(bv) * cols_ + bu]; }

    int cell_;
    int cols_ = 0, rows_ = 0;
    std::vector<Pixel> points_;
    std::vector<std::vector<int>> buckets_;
};

double distance_to_segment(const Pixel& p, const Pixel& a, const Pixel& b)
{
    const Pixel ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0)
        return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

std::vector<Pixel> resample_by_arc_length(const std::vector<Pixel>& line, int count)
{
    std::vector<double> cum(line.size(), 0.0);
    for (std::size_t i = 1; i < line.size(); ++i)
        cum[i] = cum[i - 1] + (line[i] - line[i - 1]).norm();
    const double total = cum.back();
    std::vector<Pixel> out;
    out.reserve(static_cast<std::size_t>(count));
    std::size_t seg = 1;
    for (int k = 0; k < count; ++k) {
        if (k == count - 1) {
            out.push_back(line.back());
            break;
        }
        const double s = total * double(k) / double(count - 1);
        while (seg < line.size() - 1 && cum[seg] < s)
            ++seg;
        const double len = cum[seg] - cum[seg - 1];
        const double t = len > 0 ? (s - cum[seg - 1]) / len : 0.0;
        out.push_back(line[seg - 1] + t * (line[seg] - line[seg - 1]));
    }
    return out;
}

}  // namespace

RouteMark extract_route(const AnnotatedCanvas& canvas, const RouteOptions& options)
{
    const auto blue = connected_components(threshold_mask(canvas.image, MarkColor::Blue));
    if (blue.count() == 0)
        throw Error(ErrorCode::MissingStartMarker, "no blue start marker on canvas '" + canvas.element_id + "'");
    const Pixel start = blue.centroids[blue.largest()];

    const Mask red = threshold_mask(canvas.image, MarkColor::Red);
    const PixelIndex index(red, options.search_radius);
    const auto& pts = index.points();
    if (pts.empty())
        throw Error(ErrorCode::NoMark, "no red path on canvas '" + canvas.element_id + "'");

    std::size_t seed = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = (pts[i] - start).squaredNorm();
        if (d < best) {
            best = d;
            seed = i;
        }
    }

    std::vector<bool> visited(pts.size(), false);
    std::size_t visited_count = 0;
    auto mark_capsule = [&](const Pixel& a, const Pixel& b) {
        const Pixel mid = (a + b) / 2;
        const double reach = (b - a).norm() / 2 + options.visit_radius;
        index.for_each_within(mid, reach, [&](int idx) {
            if (!visited[idx] && distance_to_segment(pts[idx], a, b) <= options.visit_radius) {
                visited[idx] = true;
                ++visited_count;
            }
        });
    };
    auto snap = [&](const Pixel& p) {
        Pixel sum = Pixel::Zero();
        int n = 0;
        index.for_each_within(p, options.snap_radius, [&](int idx) {
            sum += pts[idx];
            ++n;
        });
        return n > 0 ? Pixel(sum / n) : p;
    };

    std::vector<Pixel> line{start};
    Pixel current = pts[seed];
    mark_capsule(current, current);
    line.push_back(snap(current));
    // Farthest unvisited candidate; forward of the last step wins.
    Pixel heading = Pixel::Zero();
    for (std::size_t guard = 0; guard < pts.size(); ++guard) {
        int next = -1, back = -1;
        double far = -1, far_back = -1;
        index.for_each_within(current, options.search_radius, [&](int idx) {
            if (visited[idx])
                return;
            const Pixel step = pts[idx] - current;
            const double d = step.squaredNorm();
            int& pick = step.dot(heading) >= 0 ? next : back;
            double& best_d = step.dot(heading) >= 0 ? far : far_back;
            if (d > best_d || (d == best_d && idx < pick)) {
                best_d = d;
                pick = idx;
            }
        });
        if (next < 0)
            next = back;
        if (next < 0)
            break;
        mark_capsule(current, pts[next]);
        heading = pts[next] - current;
        current = pts[next];
        line.push_back(snap(current));
    }

    const double coverage = double(visited_count) / double(pts.size());
    if (coverage < options.min_coverage)
        throw Error(ErrorCode::FragmentedPath, "traversal covered " + std::to_string(coverage * 100.0) +
                                                   "% of red pixels on '" + canvas.element_id + "'");
    const Pixel& last = line.back();
    if ((last - start).norm() <= options.loop_distance || (last - pts[seed]).norm() <= options.loop_distance)
        throw Error(ErrorCode::LoopedPath, "path on '" + canvas.element_id + "' ends where it starts");

    RouteMark mark;
    mark.start = start;
    mark.waypoints = resample_by_arc_length(line, options.waypoint_count);
    return mark;
}

ExtractedAnnotation extract_mark(const AnnotatedCanvas& canvas)
{
    switch (canvas.kind) {
    case AnnotationTemplate::Position: return extract_position(canvas);
    case AnnotationTemplate::Area: return extract_area(canvas);
    case AnnotationTemplate::Route: return extract_route(canvas);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown annotation template");
}

double verify_canvas_alignment(const AnnotatedCanvas& canvas)
{
    if (!canvas.base_map)
        throw Error(ErrorCode::InvalidArgument, "canvas '" + canvas.element_id + "' has no base map");
    const RgbImage& base = *canvas.base_map;
    if (base.width() != canvas.image.width() || base.height() != canvas.image.height())
        throw Error(ErrorCode::DimensionMismatch, "canvas '" + canvas.element_id + "' is " +
                                                      std::to_string(canvas.image.width()) + "x" +
                                                      std::to_string(canvas.image.height()) + ", base map is " +
                                                      std::to_string(base.width()) + "x" +
                                                      std::to_string(base.height()));

    Mask marks = threshold_mask(canvas.image, MarkColor::Red) || threshold_mask(canvas.image, MarkColor::Blue);
    if (marks.any())
        marks = dilate(marks, disk_offsets(2));  // codec fringes around strokes
    const GrayImage a = luma(canvas.image);
    const GrayImage b = luma(base);
    const auto keep = (!marks).cast<double>();
    const double n = keep.sum();
    if (n < 2)
        return 0.0;
    const double mean_a = (a * keep).sum() / n;
    const double mean_b = (b * keep).sum() / n;
    const GrayImage da = (a - mean_a) * keep;
    const GrayImage db = (b - mean_b) * keep;
    const double denom = std::sqrt((da * da).sum() * (db * db).sum());
    if (denom <= 0)
        return 0.0;
    return std::clamp((da * db).sum() / denom, 0.0, 1.0);
}

AnnotationTemplate template_of(const ExtractedAnnotation& mark)
{
    return static_cast<AnnotationTemplate>(mark.index());
}

namespace {

Json pixel_json(const Pixel& p) { return Json::array({p.x(), p.y()}); }
Pixel pixel_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

Json mark_to_json(const ExtractedAnnotation& mark)
{
    return std::visit(
        [](const auto& m) -> Json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PositionMark>) {
                return {{"template", "position"}, {"pixel", pixel_json(m.pixel)}};
            } else if constexpr (std::is_same_v<T, AreaMark>) {
                Json poly = Json::array();
                for (const auto& p : m.polygon)
                    poly.push_back(pixel_json(p));
                return {{"template", "area"}, {"polygon", poly}, {"repaired", m.repaired}};
            } else {
                Json wps = Json::array();
                for (const auto& p : m.waypoints)
                    wps.push_back(pixel_json(p));
                return {{"template", "route"}, {"start", pixel_json(m.start)}, {"waypoints", wps}};
            }
        },
        mark);
}

ExtractedAnnotation mark_from_json(const Json& doc)
{
    try {
        const auto kind = parse_enum<AnnotationTemplate>(doc.at("template").get<std::string>());
        switch (kind) {
        case AnnotationTemplate::Position: return PositionMark{pixel_from(doc.at("pixel"))};
        case AnnotationTemplate::Area: {
            AreaMark m;
            for (const auto& p : doc.at("polygon"))
                m.polygon.push_back(pixel_from(p));
            m.repaired = doc.at("repaired").get<bool>();
            return m;
        }
        case AnnotationTemplate::Route: {
            RouteMark m;
            m.start = pixel_from(doc.at("start"));
            for (const auto& p : doc.at("waypoints"))
                m.waypoints.push_back(pixel_from(p));
            return m;
        }
        }
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed mark document: ") + e.what());
    }
    throw Error(ErrorCode::InvalidArgument, "unknown mark template");
}

}  // namespace forge
