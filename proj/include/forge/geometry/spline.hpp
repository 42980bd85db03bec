#pragma once

#include <forge/core/error.hpp>
#include <forge/geometry/types.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace forge {

/// Centripetal (alpha = 0.5) Catmull-Rom curve through every control point,
/// with the end points duplicated so the curve starts and ends on them.
/// `sample(t)` is parameterized by normalized arc length, measured on a
/// fixed 256-segment polyline approximation.
template <typename Scalar>
class CatmullRomSpline {
public:
    using Point = Vector3<Scalar>;
    static constexpr int kLengthSegments = 256;
    static constexpr Scalar kAlpha = Scalar(0.5);

    explicit CatmullRomSpline(std::vector<Point> control_points) : points_(std::move(control_points))
    {
        if (points_.size() < 2)
            throw Error(ErrorCode::TooFewPoints, "spline needs at least 2 control points, got " +
                                                     std::to_string(points_.size()));
        build_length_table();
    }

    const std::vector<Point>& control_points() const { return points_; }
    Scalar total_length() const { return cumulative_.back(); }
    std::size_t segment_count() const { return points_.size() - 1; }

    /// Point on segment `segment` at local parameter s in [0, 1]; s = 0 and
    /// s = 1 return the bounding control points exactly.
    Point evaluate_segment(std::size_t segment, Scalar s) const
    {
        const std::size_t n = points_.size();
        const Point& p1 = points_[segment];
        const Point& p2 = points_[segment + 1];
        if (s <= 0)
            return p1;
        if (s >= 1)
            return p2;
        const Point& p0 = segment == 0 ? p1 : points_[segment - 1];
        const Point& p3 = segment + 2 >= n ? p2 : points_[segment + 2];

        const Scalar t0 = 0;
        const Scalar t1 = t0 + knot_step(p0, p1);
        const Scalar t2 = t1 + knot_step(p1, p2);
        const Scalar t3 = t2 + knot_step(p2, p3);
        if (t2 == t1)
            return p1;
        const Scalar t = t1 + s * (t2 - t1);

        const Point a1 = lerp(p0, p1, t0, t1, t);
        const Point a2 = lerp(p1, p2, t1, t2, t);
        const Point a3 = lerp(p2, p3, t2, t3, t);
        const Point b1 = lerp(a1, a2, t0, t2, t);
        const Point b2 = lerp(a2, a3, t1, t3, t);
        return lerp(b1, b2, t1, t2, t);
    }

    /// Point at global curve parameter u in [0, segment_count()].
    Point evaluate(Scalar u) const
    {
        const Scalar clamped = std::clamp(u, Scalar(0), Scalar(segment_count()));
        std::size_t seg = static_cast<std::size_t>(std::floor(clamped));
        if (seg >= segment_count())
            seg = segment_count() - 1;
        return evaluate_segment(seg, clamped - Scalar(seg));
    }

    /// Point at normalized arc length t in [0, 1].
    Point sample(Scalar t) const { return evaluate(parameter_at(t)); }

    /// Compass heading (degrees clockwise from north, [0, 360)) of the
    /// direction of travel at normalized arc length t.
    Scalar heading(Scalar t) const
    {
        const Scalar h = Scalar(1e-4);
        const Scalar a = std::clamp(t - h, Scalar(0), Scalar(1) - h);
        const Point d = sample(a + h) - sample(a);
        Scalar deg = std::atan2(d.x(), d.y()) * Scalar(180) / Scalar(M_PI);
        if (deg < 0)
            deg += 360;
        return deg >= 360 ? deg - 360 : deg;
    }

private:
    static Scalar knot_step(const Point& a, const Point& b) { return std::pow((b - a).norm(), kAlpha); }

    static Point lerp(const Point& a, const Point& b, Scalar ta, Scalar tb, Scalar t)
    {
        if (tb == ta)
            return b;
        return ((tb - t) / (tb - ta)) * a + ((t - ta) / (tb - ta)) * b;
    }

    void build_length_table()
    {
        const Scalar span = Scalar(segment_count());
        params_.resize(kLengthSegments + 1);
        cumulative_.assign(kLengthSegments + 1, Scalar(0));
        Point prev = points_.front();
        params_[0] = 0;
        for (int k = 1; k <= kLengthSegments; ++k) {
            params_[k] = span * Scalar(k) / Scalar(kLengthSegments);
            const Point cur = evaluate(params_[k]);
            cumulative_[k] = cumulative_[k - 1] + (cur - prev).norm();
            prev = cur;
        }
    }

    Scalar parameter_at(Scalar t) const
    {
        if (t <= 0)
            return 0;
        if (t >= 1)
            return params_.back();
        const Scalar target = t * total_length();
        if (total_length() <= 0)
            return params_.back() * t;
        auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), target);
        const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - cumulative_.begin()));
        const Scalar l0 = cumulative_[k - 1];
        const Scalar l1 = cumulative_[k];
        const Scalar w = l1 > l0 ? (target - l0) / (l1 - l0) : Scalar(0);
        return params_[k - 1] + w * (params_[k] - params_[k - 1]);
    }

    std::vector<Point> points_;
    std::vector<Scalar> params_;
    std::vector<Scalar> cumulative_;
};

using SplinePath = CatmullRomSpline<double>;

inline SplinePath build_spline(const std::vector<WorldPoint>& waypoints)
{
    return SplinePath(waypoints);
}

}  // namespace forge
