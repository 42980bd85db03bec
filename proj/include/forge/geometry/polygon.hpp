#pragma once

#include <forge/geometry/types.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace forge {

template <typename Scalar>
using Polygon2 = std::vector<Vector2<Scalar>>;

/// Shoelace signed area; positive for counter-clockwise in a y-up frame.
template <typename Scalar>
Scalar signed_area(const Polygon2<Scalar>& poly)
{
    Scalar acc = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        acc += a.x() * b.y() - b.x() * a.y();
    }
    return acc / 2;
}

template <typename Scalar>
Scalar polygon_area(const Polygon2<Scalar>& poly)
{
    return std::abs(signed_area(poly));
}

/// Area centroid; falls back to the vertex mean for zero-area input.
template <typename Scalar>
Vector2<Scalar> polygon_centroid(const Polygon2<Scalar>& poly)
{
    const Scalar a = signed_area(poly);
    Vector2<Scalar> c = Vector2<Scalar>::Zero();
    if (a == 0) {
        for (const auto& p : poly)
            c += p;
        return poly.empty() ? c : Vector2<Scalar>(c / Scalar(poly.size()));
    }
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        const Scalar cross = p.x() * q.y() - q.x() * p.y();
        c += (p + q) * cross;
    }
    return c / (6 * a);
}

/// Even-odd rule by horizontal ray crossing.
template <typename Scalar>
bool point_in_polygon(const Vector2<Scalar>& pt, const Polygon2<Scalar>& poly)
{
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const auto& a = poly[i];
        const auto& b = poly[j];
        if ((a.y() > pt.y()) != (b.y() > pt.y())) {
            const Scalar x = a.x() + (pt.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
            if (pt.x() < x)
                inside = !inside;
        }
    }
    return inside;
}

template <typename Scalar>
Scalar cross2(const Vector2<Scalar>& o, const Vector2<Scalar>& a, const Vector2<Scalar>& b)
{
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Proper or touching intersection of closed segments ab and cd.
template <typename Scalar>
bool segments_intersect(const Vector2<Scalar>& a, const Vector2<Scalar>& b, const Vector2<Scalar>& c,
                        const Vector2<Scalar>& d)
{
    const Scalar d1 = cross2(c, d, a);
    const Scalar d2 = cross2(c, d, b);
    const Scalar d3 = cross2(a, b, c);
    const Scalar d4 = cross2(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on_segment = [](const Vector2<Scalar>& p, const Vector2<Scalar>& q, const Vector2<Scalar>& r) {
        return std::min(p.x(), q.x()) <= r.x() && r.x() <= std::max(p.x(), q.x()) && std::min(p.y(), q.y()) <= r.y() &&
               r.y() <= std::max(p.y(), q.y());
    };
    return (d1 == 0 && on_segment(c, d, a)) || (d2 == 0 && on_segment(c, d, b)) || (d3 == 0 && on_segment(a, b, c)) ||
           (d4 == 0 && on_segment(a, b, d));
}

/// True when no two non-adjacent edges of the closed polygon meet.
template <typename Scalar>
bool polygon_is_simple(const Polygon2<Scalar>& poly)
{
    const std::size_t n = poly.size();
    if (n < 3)
        return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1))
                continue;
            if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

/// Andrew's monotone chain; returns the hull counter-clockwise (y-up) without
/// collinear points.
template <typename Scalar>
Polygon2<Scalar> convex_hull(Polygon2<Scalar> pts)
{
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        return pts;
    Polygon2<Scalar> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

namespace detail {

template <typename Scalar>
Scalar point_segment_distance(const Vector2<Scalar>& p, const Vector2<Scalar>& a, const Vector2<Scalar>& b)
{
    const Vector2<Scalar> ab = b - a;
    const Scalar len2 = ab.squaredNorm();
    if (len2 == 0)
        return (p - a).norm();
    const Scalar t = std::clamp((p - a).dot(ab) / len2, Scalar(0), Scalar(1));
    return (p - (a + t * ab)).norm();
}

template <typename Scalar>
void douglas_peucker_range(const Polygon2<Scalar>& pts, std::size_t first, std::size_t last, Scalar tolerance,
                           std::vector<bool>& keep)
{
    if (last <= first + 1)
        return;
    Scalar best = -1;
    std::size_t index = first;
    for (std::size_t i = first + 1; i < last; ++i) {
        const Scalar d = point_segment_distance(pts[i], pts[first], pts[last]);
        if (d > best) {
            best = d;
            index = i;
        }
    }
    if (best > tolerance) {
        keep[index] = true;
        douglas_peucker_range(pts, first, index, tolerance, keep);
        douglas_peucker_range(pts, index, last, tolerance, keep);
    }
}

}  // namespace detail

/// Douglas-Peucker simplification of an open polyline; end points are kept.
template <typename Scalar>
Polygon2<Scalar> simplify_polyline(const Polygon2<Scalar>& pts, Scalar tolerance)
{
    if (pts.size() < 3)
        return pts;
    std::vector<bool> keep(pts.size(), false);
    keep.front() = keep.back() = true;
    detail::douglas_peucker_range(pts, 0, pts.size() - 1, tolerance, keep);
    Polygon2<Scalar> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (keep[i])
            out.push_back(pts[i]);
    return out;
}

/// Douglas-Peucker for a closed ring: split at the vertex farthest from the
/// first one, simplify both chains, and rejoin.
template <typename Scalar>
Polygon2<Scalar> simplify_ring(const Polygon2<Scalar>& ring, Scalar tolerance)
{
    const std::size_t n = ring.size();
    if (n < 4)
        return ring;
    std::size_t far = 0;
    Scalar best = -1;
    for (std::size_t i = 1; i < n; ++i) {
        const Scalar d = (ring[i] - ring[0]).squaredNorm();
        if (d > best) {
            best = d;
            far = i;
        }
    }
    Polygon2<Scalar> a(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(far) + 1);
    Polygon2<Scalar> b(ring.begin() + static_cast<std::ptrdiff_t>(far), ring.end());
    b.push_back(ring[0]);
    const auto sa = simplify_polyline(a, tolerance);
    const auto sb = simplify_polyline(b, tolerance);
    Polygon2<Scalar> out(sa.begin(), sa.end());
    out.insert(out.end(), sb.begin() + 1, sb.end() - 1);

    // the split vertex itself may be redundant once both chains are simplified
    if (out.size() > 3) {
        Polygon2<Scalar> pruned;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto& prev = out[(i + out.size() - 1) % out.size()];
            const auto& next = out[(i + 1) % out.size()];
            if (i == 0 && detail::point_segment_distance(out[i], prev, next) <= tolerance)
                continue;
            pruned.push_back(out[i]);
        }
        out = std::move(pruned);
    }
    return out;
}

}  // namespace forge
