#include "support.hpp"

#include <synthetic/synthetic.hpp>

#include <forge/annotate/extract.hpp>
#include <forge/annotate/marks.hpp>
#include <forge/core/error.hpp>
#include <forge/geometry/polygon.hpp>

#include <cmath>

using namespace forge;
namespace syn = forge::synthetic;

namespace {

/// Continuous point at the center of pixel index (u, v).
Pixel idx(double u, double v) { return {u + 0.5, v + 0.5}; }

RgbImage gray_canvas(int w = 400, int h = 300, std::uint8_t level = 128)
{
    RgbImage img(w, h, level);
    for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u) {
            const auto g = std::uint8_t((u * 3 + v * 5) % 200 + 20);
            img.set(u, v, g, g, g);
        }
    return img;
}

AnnotatedCanvas canvas(RgbImage img, AnnotationTemplate kind)
{
    auto base = std::make_shared<const RgbImage>(gray_canvas(img.width(), img.height()));
    return AnnotatedCanvas{std::move(img), "el", kind, base};
}

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error");
    return ErrorCode::InvalidArgument;
}

RgbImage shift(const RgbImage& img, int du, int dv)
{
    RgbImage out = gray_canvas(img.width(), img.height());
    for (int v = 0; v < img.height(); ++v)
        for (int u = 0; u < img.width(); ++u) {
            const bool gray = img.r(v, u) == img.g(v, u) && img.g(v, u) == img.b(v, u);
            const int tu = u + du, tv = v + dv;
            if (!gray && tu >= 0 && tv >= 0 && tu < img.width() && tv < img.height())
                out.set(tu, tv, img.r(v, u), img.g(v, u), img.b(v, u));
        }
    return out;
}

RgbImage load_basemap() { return decode_image(read_file(testing::fixtures_dir() / "basemap_512.png")); }

RgbImage rotate180(const RgbImage& img)
{
    RgbImage out(img.width(), img.height());
    for (int v = 0; v < img.height(); ++v)
        for (int u = 0; u < img.width(); ++u)
            out.set(img.width() - 1 - u, img.height() - 1 - v, img.r(v, u), img.g(v, u), img.b(v, u));
    return out;
}

}  // namespace

TEST_CASE("threshold bands")
{
    RgbImage img(3, 1);
    img.set(0, 0, 255, 0, 0);
    img.set(1, 0, 0, 0, 255);
    img.set(2, 0, 128, 128, 128);
    const Mask red = threshold_mask(img, MarkColor::Red), blue = threshold_mask(img, MarkColor::Blue);
    CHECK(red(0, 0));
    CHECK_FALSE(red(0, 1));
    CHECK_FALSE(red(0, 2));
    CHECK(blue(0, 1));
    CHECK_FALSE(blue(0, 0));
    CHECK_FALSE(blue(0, 2));
}

TEST_CASE("threshold band edges")
{
    RgbImage img(6, 1);
    img.set(0, 0, 200, 80, 80);
    img.set(1, 0, 199, 0, 0);
    img.set(2, 0, 255, 81, 0);
    img.set(3, 0, 80, 80, 200);
    img.set(4, 0, 81, 0, 255);
    img.set(5, 0, 0, 0, 199);
    const Mask red = threshold_mask(img, MarkColor::Red), blue = threshold_mask(img, MarkColor::Blue);
    CHECK(red(0, 0));
    CHECK_FALSE(red(0, 1));
    CHECK_FALSE(red(0, 2));
    CHECK(blue(0, 3));
    CHECK_FALSE(blue(0, 4));
    CHECK_FALSE(blue(0, 5));
}

TEST_CASE("no gray level ever enters a mask")
{
    RgbImage img(256, 1);
    for (int g = 0; g < 256; ++g)
        img.set(g, 0, std::uint8_t(g), std::uint8_t(g), std::uint8_t(g));
    CHECK_FALSE(threshold_mask(img, MarkColor::Red).any());
    CHECK_FALSE(threshold_mask(img, MarkColor::Blue).any());
}

TEST_CASE("masks ignore the gray content of the base map")
{
    RgbImage a = gray_canvas(), b(400, 300, 17);
    for (auto* img : {&a, &b}) {
        syn::paint_route(*img, {idx(50, 50), idx(200, 120), idx(350, 60)});
        syn::paint_position(*img, idx(300, 250));
    }
    CHECK((threshold_mask(a, MarkColor::Red) == threshold_mask(b, MarkColor::Red)).all());
    CHECK((threshold_mask(a, MarkColor::Blue) == threshold_mask(b, MarkColor::Blue)).all());
}

TEST_CASE("a single red pixel is its own centroid")
{
    RgbImage img = gray_canvas();
    img.set(10, 20, 255, 0, 0);
    const PositionMark m = extract_position(canvas(img, AnnotationTemplate::Position));
    CHECK(m.pixel.x() == 10.0);
    CHECK(m.pixel.y() == 20.0);
}

TEST_CASE("a filled disk of radius five is found at its center")
{
    RgbImage img = gray_canvas();
    double su = 0, sv = 0;
    int n = 0;
    for (int v = 0; v < img.height(); ++v)
        for (int u = 0; u < img.width(); ++u)
            if ((u - 100) * (u - 100) + (v - 150) * (v - 150) <= 25) {
                img.set(u, v, 255, 0, 0);
                su += u;
                sv += v;
                ++n;
            }
    const PositionMark m = extract_position(canvas(img, AnnotationTemplate::Position));
    CHECK(std::abs(m.pixel.x() - 100.0) <= 0.5);
    CHECK(std::abs(m.pixel.y() - 150.0) <= 0.5);
    CHECK(m.pixel.x() == doctest::Approx(su / n));
    CHECK(m.pixel.y() == doctest::Approx(sv / n));
}

TEST_CASE("position errors")
{
    CHECK(code_of([] { extract_position(canvas(gray_canvas(), AnnotationTemplate::Position)); }) == ErrorCode::NoMark);
    RgbImage two = gray_canvas();
    syn::paint_position(two, idx(50, 50), 5);
    syn::paint_position(two, idx(250, 200), 5);
    CHECK(code_of([&] { extract_position(canvas(two, AnnotationTemplate::Position)); }) == ErrorCode::AmbiguousMark);

    RgbImage dominant = gray_canvas();
    syn::paint_position(dominant, idx(50, 50), 8);
    syn::paint_position(dominant, idx(250, 200), 3);
    const PositionMark m = extract_position(canvas(dominant, AnnotationTemplate::Position));
    CHECK(std::abs(m.pixel.x() - 50) < 0.5);
    CHECK(std::abs(m.pixel.y() - 50) < 0.5);

    RgbImage small(10, 10, 100);
    AnnotatedCanvas c = canvas(gray_canvas(), AnnotationTemplate::Position);
    c.base_map = std::make_shared<const RgbImage>(small);
    CHECK(code_of([&] { verify_canvas_alignment(c); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("rectangle outline yields its four corners")
{
    RgbImage img = gray_canvas();
    syn::paint_area(img, {idx(100, 100), idx(300, 100), idx(300, 200), idx(100, 200)});
    const AreaMark m = extract_area(canvas(img, AnnotationTemplate::Area));
    REQUIRE(m.polygon.size() == 4);
    for (const Pixel& corner : {Pixel(100, 100), Pixel(300, 100), Pixel(300, 200), Pixel(100, 200)}) {
        double best = 1e9;
        for (const auto& p : m.polygon)
            best = std::min(best, (p - corner).norm());
        CAPTURE(corner.transpose());
        CHECK(best <= 2.0 * std::sqrt(2.0));
    }
    CHECK(std::abs(polygon_area(m.polygon) - 20000.0) <= 0.05 * 20000.0);
    CHECK_FALSE(m.repaired);
}

TEST_CASE("a filled square gives the same polygon as its outline")
{
    RgbImage filled = gray_canvas(), outline = gray_canvas();
    for (int v = 120; v < 170; ++v)
        for (int u = 200; u < 250; ++u)
            filled.set(u, v, 255, 0, 0);
    for (int v = 120; v < 170; ++v)
        for (int u = 200; u < 250; ++u)
            if (u < 202 || u > 247 || v < 122 || v > 167)
                outline.set(u, v, 255, 0, 0);
    const AreaMark a = extract_area(canvas(filled, AnnotationTemplate::Area));
    const AreaMark b = extract_area(canvas(outline, AnnotationTemplate::Area));
    REQUIRE(a.polygon.size() == 4);
    REQUIRE(b.polygon.size() == 4);
    for (const auto& p : a.polygon) {
        double best = 1e9;
        for (const auto& q : b.polygon)
            best = std::min(best, (p - q).norm());
        CHECK(best <= 2.0);
    }
    CHECK(polygon_area(a.polygon) == doctest::Approx(polygon_area(b.polygon)).epsilon(0.05));
}

TEST_CASE("area errors and repair")
{
    CHECK(code_of([] { extract_area(canvas(gray_canvas(), AnnotationTemplate::Area)); }) == ErrorCode::NoMark);
    RgbImage line = gray_canvas();
    syn::draw_segment(line, idx(50, 50), idx(300, 50), 1, syn::kRed);
    CHECK(code_of([&] { extract_area(canvas(line, AnnotationTemplate::Area)); }) == ErrorCode::DegenerateArea);

    // A bow-tie outline self-intersects; the extractor returns a simple polygon.
    RgbImage bow = gray_canvas();
    syn::paint_area(bow, {idx(60, 60), idx(260, 220), idx(260, 60), idx(60, 220)});
    const AreaMark m = extract_area(canvas(bow, AnnotationTemplate::Area));
    CHECK(polygon_is_simple(m.polygon));
    CHECK(polygon_area(m.polygon) > 0);
}

TEST_CASE("a horizontal bar with a blue start is read left to right")
{
    RgbImage img = gray_canvas();
    syn::draw_segment(img, idx(100, 200), idx(300, 200), 8, syn::kRed);
    syn::stamp_disk(img, idx(100, 200), 6, syn::kBlue);
    const RouteMark m = extract_route(canvas(img, AnnotationTemplate::Route));
    CHECK((m.start - Pixel(100, 200)).norm() <= 2.0);
    REQUIRE(m.waypoints.size() == 16);
    CHECK((m.waypoints.front() - m.start).norm() <= 2.0);
    for (std::size_t i = 0; i < m.waypoints.size(); ++i) {
        CHECK(std::abs(m.waypoints[i].y() - 200) <= 3.0);
        if (i)
            CHECK(m.waypoints[i].x() > m.waypoints[i - 1].x());
    }
}

TEST_CASE("route errors")
{
    RgbImage ring = gray_canvas();
    for (int k = 0; k < 64; ++k) {
        const double a0 = 2 * M_PI * k / 64, a1 = 2 * M_PI * (k + 1) / 64;
        syn::draw_segment(ring, idx(200 + 80 * std::cos(a0), 150 + 80 * std::sin(a0)),
                          idx(200 + 80 * std::cos(a1), 150 + 80 * std::sin(a1)), 8, syn::kRed);
    }
    syn::stamp_disk(ring, idx(280, 150), 6, syn::kBlue);
    CHECK(code_of([&] { extract_route(canvas(ring, AnnotationTemplate::Route)); }) == ErrorCode::LoopedPath);

    RgbImage no_blue = gray_canvas();
    syn::draw_segment(no_blue, idx(50, 50), idx(300, 50), 8, syn::kRed);
    CHECK(code_of([&] { extract_route(canvas(no_blue, AnnotationTemplate::Route)); }) == ErrorCode::MissingStartMarker);

    RgbImage no_red = gray_canvas();
    syn::stamp_disk(no_red, idx(50, 50), 6, syn::kBlue);
    CHECK(code_of([&] { extract_route(canvas(no_red, AnnotationTemplate::Route)); }) == ErrorCode::NoMark);

    RgbImage split = gray_canvas();
    syn::draw_segment(split, idx(20, 50), idx(150, 50), 8, syn::kRed);
    syn::draw_segment(split, idx(220, 250), idx(380, 250), 8, syn::kRed);
    syn::draw_segment(split, idx(220, 200), idx(380, 200), 8, syn::kRed);
    syn::stamp_disk(split, idx(20, 50), 6, syn::kBlue);
    CHECK(code_of([&] { extract_route(canvas(split, AnnotationTemplate::Route)); }) == ErrorCode::FragmentedPath);
}

TEST_CASE("route waypoints are evenly spaced along long paths")
{
    RgbImage img = gray_canvas();
    const std::vector<Pixel> path = {idx(40, 250), idx(120, 80), idx(220, 200), idx(360, 60)};
    syn::paint_route(img, path);
    const RouteMark m = extract_route(canvas(img, AnnotationTemplate::Route));
    std::vector<double> gaps;
    for (std::size_t i = 1; i < m.waypoints.size(); ++i)
        gaps.push_back((m.waypoints[i] - m.waypoints[i - 1]).norm());
    double mean = 0;
    for (double g : gaps)
        mean += g;
    mean /= double(gaps.size());
    CHECK(mean * gaps.size() > 100);
    // Uniform in arc length; chords on bends run a little shorter.
    for (double g : gaps)
        CHECK(std::abs(g - mean) <= 0.1 * mean + 1.0);
}

TEST_CASE("extractors are translation equivariant")
{
    RgbImage pos = gray_canvas(), area = gray_canvas(), route = gray_canvas();
    syn::paint_position(pos, idx(120, 110));
    syn::paint_area(area, {idx(80, 60), idx(220, 90), idx(180, 200), idx(90, 170)});
    syn::paint_route(route, {idx(60, 220), idx(150, 120), idx(260, 160)});
    const auto p0 = extract_position(canvas(pos, AnnotationTemplate::Position));
    const auto a0 = extract_area(canvas(area, AnnotationTemplate::Area));
    const auto r0 = extract_route(canvas(route, AnnotationTemplate::Route));
    for (auto [du, dv] : {std::pair{7, -3}, std::pair{-25, 40}, std::pair{60, 0}}) {
        const Pixel d(du, dv);
        const auto p1 = extract_position(canvas(shift(pos, du, dv), AnnotationTemplate::Position));
        CHECK((p1.pixel - (p0.pixel + d)).norm() < 1e-9);
        const auto a1 = extract_area(canvas(shift(area, du, dv), AnnotationTemplate::Area));
        REQUIRE(a1.polygon.size() == a0.polygon.size());
        for (std::size_t i = 0; i < a0.polygon.size(); ++i)
            CHECK((a1.polygon[i] - (a0.polygon[i] + d)).norm() < 1e-9);
        const auto r1 = extract_route(canvas(shift(route, du, dv), AnnotationTemplate::Route));
        CHECK((r1.start - (r0.start + d)).norm() < 1e-9);
        REQUIRE(r1.waypoints.size() == r0.waypoints.size());
        for (std::size_t i = 0; i < r0.waypoints.size(); ++i)
            CHECK((r1.waypoints[i] - (r0.waypoints[i] + d)).norm() <= 0.5);
    }
}

TEST_CASE("extracted coordinates stay inside the image")
{
    RgbImage img = gray_canvas();
    syn::paint_position(img, idx(0, 0), 6);
    const auto p = extract_position(canvas(img, AnnotationTemplate::Position));
    CHECK(p.pixel.x() >= 0);
    CHECK(p.pixel.y() >= 0);

    RgbImage edge = gray_canvas();
    syn::paint_route(edge, {idx(0, 299), idx(200, 290), idx(399, 299)});
    const auto r = extract_route(canvas(edge, AnnotationTemplate::Route));
    for (const auto& w : r.waypoints) {
        CHECK(w.x() >= 0);
        CHECK(w.x() < 400);
        CHECK(w.y() >= 0);
        CHECK(w.y() < 300);
    }

    RgbImage big = gray_canvas();
    syn::paint_area(big, {idx(0, 0), idx(399, 0), idx(399, 299), idx(0, 299)});
    for (const auto& q : extract_area(canvas(big, AnnotationTemplate::Area)).polygon) {
        CHECK(q.x() >= 0);
        CHECK(q.x() < 400);
        CHECK(q.y() >= 0);
        CHECK(q.y() < 300);
    }
}

TEST_CASE("alignment: copy scores high, rotation and noise score low")
{
    const RgbImage base = load_basemap();
    REQUIRE(base.width() == 512);
    auto base_ptr = std::make_shared<const RgbImage>(base);

    RgbImage copy = base;
    syn::paint_position(copy, idx(200, 300));
    CHECK(verify_canvas_alignment({copy, "a", AnnotationTemplate::Position, base_ptr}) > 0.95);

    RgbImage rotated = rotate180(base);
    syn::paint_position(rotated, idx(200, 300));
    CHECK(verify_canvas_alignment({rotated, "a", AnnotationTemplate::Position, base_ptr}) < 0.7);

    const RgbImage noise = syn::noise_image(512, 512, 99);
    CHECK(verify_canvas_alignment({noise, "a", AnnotationTemplate::Position, base_ptr}) < 0.2);
}

TEST_CASE("marks survive a JSON round trip")
{
    const std::vector<ExtractedAnnotation> marks = {
        PositionMark{Pixel(1.25, 3.5)},
        AreaMark{{Pixel(0, 0), Pixel(10, 0), Pixel(10, 5)}, true},
        RouteMark{Pixel(1, 1), {Pixel(1, 1), Pixel(30, 2), Pixel(60, 9)}}};
    for (const auto& m : marks) {
        const auto back = mark_from_json(parse_json(canonical_dump(mark_to_json(m))));
        CHECK(template_of(back) == template_of(m));
        CHECK(canonical_dump(mark_to_json(back)) == canonical_dump(mark_to_json(m)));
    }
}
