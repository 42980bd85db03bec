#include "support.hpp"

#include <forge/core/error.hpp>
#include <forge/geometry/basemap.hpp>
#include <forge/geometry/polygon.hpp>
#include <forge/geometry/projection.hpp>
#include <forge/geometry/scale.hpp>
#include <forge/geometry/spline.hpp>
#include <forge/geometry/terrain.hpp>

#include <cmath>

using namespace forge;

namespace {

OrthoCameraSpec cam1000()
{
    OrthoCameraSpec c;
    c.extent_east = c.extent_north = 100;
    c.image_width = c.image_height = 1000;
    return c;
}

/// h(e, n) = a*e + b*n + c sampled on a grid; exact under bilinear queries.
TerrainModel plane(double a, double b, double c, int n = 10, double origin = -50, double cell = 10)
{
    TerrainModel::Grid g(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            g(j, i) = a * (origin + cell * i) + b * (origin + cell * j) + c;
    return TerrainModel(g, origin, origin, cell);
}

}  // namespace

TEST_CASE("camera examples")
{
    const auto c = cam1000();
    CHECK(pixel_to_ground(Pixel(500, 500), c).isApprox(GroundPoint(0, 0)));
    const GroundPoint tl = pixel_to_ground(Pixel(0, 0), c);
    CHECK(tl.x() == -50.0);
    CHECK(tl.y() == 50.0);
    const GroundPoint q = pixel_to_ground(Pixel(750, 250), c);
    CHECK(q.x() == 25.0);
    CHECK(q.y() == 25.0);
}

TEST_CASE("out-of-frame pixels are rejected")
{
    const auto c = cam1000();
    for (const Pixel& p : {Pixel(-0.01, 5), Pixel(5, 1000.01), Pixel(1001, 1001)}) {
        try {
            pixel_to_ground(p, c);
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::OutOfFrame);
        }
    }
    CHECK_NOTHROW(pixel_to_ground(Pixel(1000, 1000), c));
}

TEST_CASE("pixel to ground to pixel is exact and monotone")
{
    OrthoCameraSpec c;
    c.center_east = 12.5;
    c.center_north = -7.25;
    c.extent_east = 180;
    c.extent_north = 140;
    c.image_width = 2048;
    c.image_height = 1536;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 2048), v(0, 1536);
    for (int i = 0; i < 2000; ++i) {
        const Pixel p(u(rng), v(rng));
        CHECK((ground_to_pixel(pixel_to_ground(p, c), c) - p).norm() < 1e-9);
        const GroundPoint g = pixel_to_ground(p, c);
        if (p.x() < 2047)
            CHECK(pixel_to_ground(Pixel(p.x() + 1, p.y()), c).x() > g.x());
        if (p.y() < 1535)
            CHECK(pixel_to_ground(Pixel(p.x(), p.y() + 1), c).y() < g.y());
    }
}

TEST_CASE("terrain examples")
{
    const TerrainModel flat5(TerrainModel::Grid::Constant(3, 3, 5.0), -10, -10, 10);
    for (double e : {-100.0, -3.0, 0.0, 7.5, 300.0})
        CHECK(terrain_height(flat5, e, e / 2) == 5.0);

    TerrainModel::Grid g(2, 2);
    g << 0, 10, 10, 20;
    const TerrainModel quad(g, 0, 0, 1);
    CHECK(terrain_height(quad, 0.5, 0.5) == doctest::Approx(10.0));

    const TerrainModel p = plane(0.1, 0, 0, 10, 0, 10);
    CHECK(std::abs(terrain_height(p, 30, 17) - 3.0) < 1e-9);
}

TEST_CASE("terrain reproduces node values and clamps outside the grid")
{
    TerrainModel::Grid g(4, 5);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 5; ++i)
            g(j, i) = std::sin(i * 1.3) * 4 + j * j;
    const TerrainModel t(g, 100, 200, 2.5);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 5; ++i)
            CHECK(t.height(100 + 2.5 * i, 200 + 2.5 * j) == g(j, i));
    CHECK(t.height(0, 0) == g(0, 0));
    CHECK(t.height(1e6, 1e6) == g(3, 4));
    CHECK(t.height(105, -50) == g(0, 2));
}

TEST_CASE("heightfield preconditions and fixture format")
{
    CHECK_THROWS_AS(TerrainModel(TerrainModel::Grid::Zero(1, 3), 0, 0, 1), Error);
    CHECK_THROWS_AS(TerrainModel(TerrainModel::Grid::Zero(2, 2), 0, 0, 0), Error);
    TerrainModel::Grid bad = TerrainModel::Grid::Zero(2, 2);
    bad(1, 1) = std::nan("");
    CHECK_THROWS_AS(TerrainModel(bad, 0, 0, 1), Error);

    const TerrainModel t = plane(0.25, -0.5, 3, 6, -25, 10);
    const TerrainModel back = terrain_from_json(parse_json(canonical_dump(terrain_to_json(t))));
    CHECK(back == t);
    const Json doc = terrain_to_json(t);
    CHECK(doc.at("columns") == 6);
    CHECK(doc.at("rows") == 6);
    CHECK(doc.at("heights").size() == 36);
}

TEST_CASE("planar heights are exact across a grid")
{
    const TerrainModel t = plane(0.37, -0.21, 12.5);
    for (int i = 0; i <= 90; ++i)
        for (int j = 0; j <= 90; j += 3) {
            const double e = -50 + i, n = -50 + j;
            CHECK(std::abs(t.height(e, n) - (0.37 * e - 0.21 * n + 12.5)) < 1e-9);
        }
}

TEST_CASE("projection examples")
{
    const auto c = cam1000();
    const TerrainModel flat = TerrainModel::flat(0, 100);
    const auto pos = std::get<ProjectedPosition>(project_annotation(PositionMark{Pixel(500, 500)}, c, flat));
    CHECK(pos.point.isApprox(WorldPoint(0, 0, 0)));

    const TerrainModel slope = plane(0.1, 0, 0, 12, -60, 10);
    RouteMark route;
    route.start = Pixel(50, 900);
    for (int k = 0; k < 16; ++k)
        route.waypoints.emplace_back(50 + 55.5 * k, 900 - 50.25 * k);
    const auto r = std::get<ProjectedRoute>(project_annotation(route, c, slope));
    REQUIRE(r.waypoints.size() == 16);
    for (const auto& w : r.waypoints)
        CHECK(std::abs(w.z() - w.x() / 10) < 1e-9);

    AreaMark sq;
    sq.polygon = {Pixel(100, 100), Pixel(400, 100), Pixel(400, 300), Pixel(100, 300)};
    const auto a = std::get<ProjectedArea>(project_annotation(sq, c, flat));
    Polygon2<double> ground;
    for (const auto& w : a.polygon)
        ground.emplace_back(w.x(), w.y());
    const double expect = polygon_area(sq.polygon) * (100.0 / 1000) * (100.0 / 1000);
    CHECK(std::abs(polygon_area(ground) - expect) <= 1e-6 * expect);

    try {
        project_annotation(PositionMark{Pixel(1200, 5)}, c, flat);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutOfFrame);
    }
}

TEST_CASE("spline examples")
{
    const WorldPoint a(1, 2, 3), b(11, -4, 8);
    const SplinePath two = build_spline({a, b});
    CHECK((two.sample(0.5) - (a + b) / 2).norm() < 1e-9);
    CHECK((two.sample(0) - a).norm() == 0.0);
    CHECK((two.sample(1) - b).norm() == 0.0);

    const WorldPoint dir = WorldPoint(3, -1, 0.5).normalized();
    std::vector<WorldPoint> line;
    for (int k = 0; k < 4; ++k)
        line.push_back(WorldPoint(2, 2, 0) + 7.0 * k * dir);
    const SplinePath col = build_spline(line);
    for (int s = 0; s <= 256; ++s) {
        const WorldPoint p = col.sample(s / 256.0) - line[0];
        CHECK((p - p.dot(dir) * dir).norm() < 1e-9);
    }

    std::vector<WorldPoint> arc;
    for (int k = 0; k < 4; ++k) {
        const double t = (M_PI / 2) * k / 3;
        arc.emplace_back(10 * std::cos(t), 10 * std::sin(t), 0);
    }
    const SplinePath circ = build_spline(arc);
    double worst = 0;
    for (int s = 0; s < 256; ++s) {
        const WorldPoint p = circ.sample(s / 255.0);
        worst = std::max(worst, std::abs(std::hypot(p.x(), p.y()) - 10));
    }
    CHECK(worst < 0.5);

    CHECK_THROWS_AS(build_spline({a}), Error);
}

TEST_CASE("splines pass through every control point and are continuous")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> d(-80, 80);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<WorldPoint> pts;
        const int n = 2 + int(rng() % 15);
        for (int i = 0; i < n; ++i)
            pts.emplace_back(d(rng), d(rng), d(rng) / 10);
        const SplinePath s = build_spline(pts);
        for (int i = 0; i < n; ++i)
            CHECK((s.evaluate(double(i)) - pts[i]).norm() < 1e-12);
        CHECK((s.sample(0) - pts.front()).norm() == 0.0);
        CHECK((s.sample(1) - pts.back()).norm() == 0.0);
        for (int k = 0; k < 200; ++k) {
            const double t = k / 200.0;
            CHECK((s.sample(t) - s.sample(t + 1e-6)).norm() < 1e-5 * s.total_length());
        }
    }
}

TEST_CASE("spline heading is a compass bearing")
{
    const SplinePath east = build_spline({WorldPoint(0, 0, 0), WorldPoint(10, 0, 0)});
    CHECK(east.heading(0.5) == doctest::Approx(90.0));
    const SplinePath south = build_spline({WorldPoint(0, 0, 0), WorldPoint(0, -10, 0)});
    CHECK(south.heading(0.0) == doctest::Approx(180.0));
    const SplinePath west = build_spline({WorldPoint(0, 0, 0), WorldPoint(-10, 0, 0)});
    CHECK(west.heading(1.0) == doctest::Approx(270.0));
}

TEST_CASE("scale examples")
{
    auto bounds = [](double h) {
        MeshBounds b;
        b.min = Vector3<double>(-0.5, 0, -0.5);
        b.max = Vector3<double>(0.5, h, 0.5);
        return b;
    };
    CHECK(compute_scale(bounds(1.0), SizeClass::Medium) == 2.0);
    CHECK(compute_scale(bounds(4.0), SizeClass::Large) == 2.0);
    try {
        compute_scale(bounds(0.0), SizeClass::Small);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateMesh);
    }
    CHECK(nominal_height(SizeClass::Small) == 0.5);
    CHECK(nominal_height(SizeClass::Unknown) == 2.0);
    for (double h : {0.125, 0.3, 1.7, 2.5, 64.0})
        for (SizeClass s : {SizeClass::Small, SizeClass::Medium, SizeClass::Large, SizeClass::Unknown}) {
            const double k = compute_scale(bounds(h), s);
            CHECK(k > 0);
            CHECK(k * h == doctest::Approx(nominal_height(s)).epsilon(1e-15));
        }
}

TEST_CASE("base map renders deterministically and is not symmetric")
{
    OrthoCameraSpec c;
    c.image_width = c.image_height = 128;
    const TerrainModel t = plane(0.05, 0.02, 0, 21, -100, 10);
    const RgbImage a = render_base_map(t, c), b = render_base_map(t, c);
    CHECK(a == b);
    CHECK(a.width() == 128);
    bool gray = true;
    for (int v = 0; v < 128; ++v)
        for (int u = 0; u < 128; ++u)
            gray = gray && a.r(v, u) == a.g(v, u) && a.g(v, u) == a.b(v, u);
    CHECK(gray);
    int differing = 0;
    for (int v = 0; v < 128; ++v)
        for (int u = 0; u < 128; ++u)
            differing += a.r(v, u) != a.r(127 - v, 127 - u);
    CHECK(differing > 128 * 128 / 2);
}

TEST_CASE("polygon helpers")
{
    const Polygon2<double> sq = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    CHECK(signed_area(sq) == 16.0);
    CHECK(polygon_centroid(sq).isApprox(Vector2<double>(2, 2)));
    CHECK(point_in_polygon(Vector2<double>(1, 1), sq));
    CHECK_FALSE(point_in_polygon(Vector2<double>(5, 1), sq));
    CHECK(polygon_is_simple(sq));
    const Polygon2<double> bow = {{0, 0}, {4, 4}, {4, 0}, {0, 4}};
    CHECK_FALSE(polygon_is_simple(bow));
    CHECK(convex_hull(bow).size() == 4);
}
