// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#define DOCTEST_CONFIG_DISABLE
#include "random_manifest.hpp"
#include "support.hpp"

#include <synthetic/synthetic.hpp>

#include <forge/annotate/extract.hpp>
#include <forge/core/error.hpp>
#include <forge/core/validate.hpp>
#include <forge/geometry/projection.hpp>
#include <forge/geometry/spline.hpp>
#include <forge/pipeline/pipeline.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace forge;
namespace fs = std::filesystem;
namespace syn = forge::synthetic;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
    bool pass = true;
    std::string note;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            note = what;
        }
    }
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---- 1 --------------------------------------------------------------------

Verdict schema_suite()
{
    Verdict v;
    const std::set<std::string> photos{"photo01", "photo02", "photo03", "photo04", "photo05"};
    std::vector<std::pair<fs::path, bool>> cases;
    for (const char* sub : {"valid", "invalid"}) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(testing::data_dir() / "schema" / sub))
            files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
            cases.emplace_back(f, std::string(sub) == "valid");
    }
    std::vector<Json> docs;
    for (const auto& [f, ok] : cases)
        docs.push_back(testing::read_json_file(f));

    const auto t0 = Clock::now();
    int correct = 0, valid = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        bool accepted = true;
        try {
            validate_scene_description(docs[i], photos);
        } catch (const SchemaViolation&) {
            accepted = false;
        }
        valid += cases[i].second;
        if (accepted == cases[i].second)
            ++correct;
        else
            v.require(false, "misclassified " + cases[i].first.filename().string());
    }
    const double secs = seconds_since(t0);
    v.require(cases.size() >= 20 && valid >= 10 && int(cases.size()) - valid >= 10, "corpus too small");
    v.require(fs::exists(testing::data_dir() / "schema/valid/01_all_empty_layers.json"), "missing all-empty case");
    v.require(secs < 1.0, "runtime " + fmt("%.3f", secs) + " s");
    if (v.pass)
        v.note = std::to_string(correct) + "/" + std::to_string(cases.size()) + " in " + fmt("%.3f", secs) + " s";
    return v;
}

// ---- 2 --------------------------------------------------------------------

Verdict particle_rule()
{
    Verdict v;
    std::mt19937_64 rng(1000);
    const char* levels[] = {"low", "medium", "high"};
    int warned = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Json effects = Json::object();
        int violations = 0;
        for (const char* name : {"rain", "snow", "fog", "cloud", "blossom"}) {
            const bool enabled = rng() % 2;
            const char* level = levels[rng() % 3];
            if (!enabled && std::string(level) != "low")
                ++violations;
            effects[name] = {{"enabled", enabled}, {"intensity", level}};
        }
        const auto n = normalize_particle_config({{"effects", effects}});
        for (const auto& c : n.configs)
            v.require(c.enabled || c.intensity == Level::Low, "rule violated in trial " + std::to_string(trial));
        v.require(int(n.warnings.size()) == violations, "warning count mismatch in trial " + std::to_string(trial));
        warned += violations > 0;
    }
    if (v.pass)
        v.note = "1000 documents, " + std::to_string(warned) + " coerced";
    return v;
}

// ---- 3 --------------------------------------------------------------------

TerrainModel plane(double a, double b, double c)
{
    TerrainModel::Grid g(12, 12);
    for (int j = 0; j < 12; ++j)
        for (int i = 0; i < 12; ++i)
            g(j, i) = a * (-110 + 20.0 * i) + b * (-110 + 20.0 * j) + c;
    return TerrainModel(g, -110, -110, 20);
}

Verdict projection_oracle()
{
    Verdict v;
    OrthoCameraSpec cam;
    cam.center_east = 3.5;
    cam.center_north = -2.25;
    cam.extent_east = cam.extent_north = 200;
    cam.image_width = cam.image_height = 2048;
    const double a = 0.12, b = -0.07, c = 4.5;
    double worst_px = 0, worst_h = 0;
    for (const bool planar : {false, true}) {
        const TerrainModel t = planar ? plane(a, b, c) : TerrainModel::flat(2.0, 150);
        for (int j = 0; j < 100; ++j)
            for (int i = 0; i < 100; ++i) {
                const Pixel px(2048.0 * (i + 0.37) / 100, 2048.0 * (j + 0.61) / 100);
                const WorldPoint w = drop_to_terrain(px, cam, t);
                worst_px = std::max(worst_px, (ground_to_pixel(GroundPoint(w.x(), w.y()), cam) - px).norm());
                const double expect = planar ? a * w.x() + b * w.y() + c : 2.0;
                worst_h = std::max(worst_h, std::abs(w.z() - expect));
            }
    }
    v.require(worst_px < 1e-9, "round trip error " + fmt("%.3g", worst_px) + " px");
    v.require(worst_h < 1e-9, "height error " + fmt("%.3g", worst_h) + " m");
    if (v.pass)
        v.note = "20000 points, max " + fmt("%.2g", worst_px) + " px / " + fmt("%.2g", worst_h) + " m";
    return v;
}

// ---- 4 --------------------------------------------------------------------

constexpr int kSize = 2048;

/// Continuous coordinates of pixel index (u, v).
Pixel idx(double u, double v) { return {u + 0.5, v + 0.5}; }

RgbImage textured_canvas(std::uint64_t seed)
{
    RgbImage img(kSize, kSize);
    for (int v = 0; v < kSize; ++v)
        for (int u = 0; u < kSize; ++u) {
            const auto g = std::uint8_t((u * 3 + v * 5 + seed * 17) % 200 + 20);
            img.set(u, v, g, g, g);
        }
    return img;
}

bool crosses_inside(const std::vector<Pixel>& poly, double x, double y)
{
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Pixel& a = poly[i];
        const Pixel& b = poly[j];
        if ((a.y() > y) != (b.y() > y) && x < (b.x() - a.x()) * (y - a.y()) / (b.y() - a.y()) + a.x())
            in = !in;
    }
    return in;
}

/// IoU of two polygons estimated on a 1 px lattice.
double lattice_iou(const std::vector<Pixel>& p, const std::vector<Pixel>& q)
{
    double lo_x = 1e9, lo_y = 1e9, hi_x = -1e9, hi_y = -1e9;
    for (const auto* poly : {&p, &q})
        for (const auto& pt : *poly) {
            lo_x = std::min(lo_x, pt.x());
            lo_y = std::min(lo_y, pt.y());
            hi_x = std::max(hi_x, pt.x());
            hi_y = std::max(hi_y, pt.y());
        }
    std::size_t both = 0, either = 0;
    for (double y = std::floor(lo_y); y <= hi_y; y += 1.0)
        for (double x = std::floor(lo_x); x <= hi_x; x += 1.0) {
            const bool a = crosses_inside(p, x + 0.25, y + 0.25), b = crosses_inside(q, x + 0.25, y + 0.25);
            both += a && b;
            either += a || b;
        }
    return either ? double(both) / double(either) : 0.0;
}

double segment_distance(const Pixel& p, const Pixel& a, const Pixel& b, double* t)
{
    const Pixel d = b - a;
    *t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
    return (p - (a + *t * d)).norm();
}

/// Distance to a polyline and the arc-length position of the nearest point.
std::pair<double, double> locate_on_path(const Pixel& p, const std::vector<Pixel>& path)
{
    double best = 1e18, at = 0, run = 0;
    for (std::size_t k = 1; k < path.size(); ++k) {
        double t;
        const double d = segment_distance(p, path[k - 1], path[k], &t);
        const double len = (path[k] - path[k - 1]).norm();
        if (d < best) {
            best = d;
            at = run + t * len;
        }
        run += len;
    }
    return {best, at};
}

std::vector<Pixel> to_index(std::vector<Pixel> pts)
{
    for (auto& p : pts)
        p -= Pixel(0.5, 0.5);
    return pts;
}

template <typename F>
std::optional<ErrorCode> error_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

Verdict annotation_suite()
{
    Verdict v;
    const auto t0 = Clock::now();
    const auto base = std::make_shared<const RgbImage>(textured_canvas(0));
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> coord(200, kSize - 200);
    int canvases = 0, errors_named = 0;
    auto canvas = [&](RgbImage img, AnnotationTemplate kind) {
        ++canvases;
        return AnnotatedCanvas{std::move(img), "golden", kind, base};
    };
    auto expect_error = [&](const AnnotatedCanvas& c, ErrorCode code, const char* what) {
        const auto got = error_of([&] { extract_mark(c); });
        v.require(got == code, std::string("expected ") + std::string(error_code_name(code)) + " for " + what);
        errors_named += got == code;
    };

    double worst_pos = 0;
    for (int k = 0; k < 8; ++k) {
        RgbImage img = textured_canvas(k);
        const Pixel truth(coord(rng), coord(rng));
        syn::paint_position(img, truth, 4 + k % 5);
        const auto m = std::get<PositionMark>(extract_mark(canvas(std::move(img), AnnotationTemplate::Position)));
        worst_pos = std::max(worst_pos, (m.pixel - (truth - Pixel(0.5, 0.5))).norm());
    }
    v.require(worst_pos <= 1.0, "position error " + fmt("%.2f", worst_pos) + " px");
    expect_error(canvas(textured_canvas(8), AnnotationTemplate::Position), ErrorCode::NoMark, "blank position");
    {
        RgbImage two = textured_canvas(9);
        syn::paint_position(two, idx(400, 400), 6);
        syn::paint_position(two, idx(1500, 1200), 6);
        expect_error(canvas(std::move(two), AnnotationTemplate::Position), ErrorCode::AmbiguousMark, "tied disks");
    }

    double worst_iou = 1;
    for (int k = 0; k < 8; ++k) {
        RgbImage img = textured_canvas(10 + k);
        const Pixel c(kSize / 2.0 + 300 * std::sin(k), kSize / 2.0 + 300 * std::cos(k));
        std::vector<Pixel> poly;
        const int n = 3 + k % 5;
        for (int i = 0; i < n; ++i) {
            const double a = 2 * M_PI * i / n + 0.3 * k;
            const double r = 420 + 160 * ((i * 7 + k) % 3) / 2.0;
            poly.push_back(c + Pixel(r * std::cos(a), r * std::sin(a)));
        }
        syn::paint_area(img, poly);
        const auto m = std::get<AreaMark>(extract_mark(canvas(std::move(img), AnnotationTemplate::Area)));
        worst_iou = std::min(worst_iou, lattice_iou(m.polygon, to_index(poly)));
    }
    v.require(worst_iou >= 0.95, "area IoU " + fmt("%.3f", worst_iou));
    expect_error(canvas(textured_canvas(18), AnnotationTemplate::Area), ErrorCode::NoMark, "blank area");
    {
        RgbImage line = textured_canvas(19);
        syn::draw_segment(line, idx(300, 300), idx(1700, 300), 1, syn::kRed);
        expect_error(canvas(std::move(line), AnnotationTemplate::Area), ErrorCode::DegenerateArea, "hairline area");
    }

    double worst_start = 0, worst_way = 0;
    bool ordered = true;
    for (int k = 0; k < 6; ++k) {
        RgbImage img = textured_canvas(20 + k);
        std::vector<Pixel> path;
        const int n = 2 + k % 4;
        for (int i = 0; i < n; ++i)
            path.emplace_back(250 + 1500.0 * i / (n - 1), 400 + 1200 * (0.5 + 0.5 * std::sin(1.3 * i + k)));
        if (k % 2)
            std::reverse(path.begin(), path.end());
        syn::paint_route(img, path);
        const auto m = std::get<RouteMark>(extract_mark(canvas(std::move(img), AnnotationTemplate::Route)));
        const auto truth = to_index(path);
        worst_start = std::max(worst_start, (m.start - truth.front()).norm());
        double last = -1e9;
        for (const auto& w : m.waypoints) {
            const auto [d, at] = locate_on_path(w, truth);
            worst_way = std::max(worst_way, d);
            ordered = ordered && at >= last - 1.0;
            last = at;
        }
    }
    v.require(worst_start <= 2.0, "route start error " + fmt("%.2f", worst_start) + " px");
    v.require(worst_way <= 3.0, "waypoint error " + fmt("%.2f", worst_way) + " px");
    v.require(ordered, "waypoints out of order");
    {
        RgbImage no_blue = textured_canvas(26);
        syn::draw_segment(no_blue, idx(300, 300), idx(1700, 900), 8, syn::kRed);
        expect_error(canvas(std::move(no_blue), AnnotationTemplate::Route), ErrorCode::MissingStartMarker, "no start");

        RgbImage no_red = textured_canvas(27);
        syn::stamp_disk(no_red, idx(300, 300), 8, syn::kBlue);
        expect_error(canvas(std::move(no_red), AnnotationTemplate::Route), ErrorCode::NoMark, "no path");

        RgbImage ring = textured_canvas(28);
        std::vector<Pixel> loop;
        for (int i = 0; i <= 96; ++i)
            loop.push_back(idx(1024 + 600 * std::cos(2 * M_PI * i / 96), 1024 + 600 * std::sin(2 * M_PI * i / 96)));
        for (std::size_t i = 1; i < loop.size(); ++i)
            syn::draw_segment(ring, loop[i - 1], loop[i], 8, syn::kRed);
        syn::stamp_disk(ring, loop.front(), 8, syn::kBlue);
        expect_error(canvas(std::move(ring), AnnotationTemplate::Route), ErrorCode::LoopedPath, "closed loop");

        RgbImage split = textured_canvas(29);
        syn::draw_segment(split, idx(200, 300), idx(700, 300), 8, syn::kRed);
        syn::draw_segment(split, idx(1000, 1500), idx(1900, 1500), 8, syn::kRed);
        syn::draw_segment(split, idx(1000, 1200), idx(1900, 1200), 8, syn::kRed);
        syn::stamp_disk(split, idx(200, 300), 8, syn::kBlue);
        expect_error(canvas(std::move(split), AnnotationTemplate::Route), ErrorCode::FragmentedPath, "fragments");
    }

    const double secs = seconds_since(t0);
    v.require(canvases >= 30, "only " + std::to_string(canvases) + " canvases");
    v.require(secs < 10.0, "runtime " + fmt("%.2f", secs) + " s");
    if (v.pass)
        v.note = std::to_string(canvases) + " canvases at 2048x2048, " + std::to_string(errors_named) +
                 " error cases, pos " + fmt("%.2f", worst_pos) + " px, IoU " + fmt("%.3f", worst_iou) + ", start " +
                 fmt("%.2f", worst_start) + " px, waypoints " + fmt("%.2f", worst_way) + " px, " + fmt("%.2f", secs) +
                 " s";
    return v;
}

// ---- 5 --------------------------------------------------------------------

Verdict alignment_check()
{
    Verdict v;
    const RgbImage base = decode_image(read_file(testing::fixtures_dir() / "basemap_512.png"));
    const auto ptr = std::make_shared<const RgbImage>(base);
    RgbImage copy = base;
    syn::paint_position(copy, idx(200, 300));
    RgbImage rotated(base.width(), base.height());
    for (int y = 0; y < base.height(); ++y)
        for (int x = 0; x < base.width(); ++x)
            rotated.set(base.width() - 1 - x, base.height() - 1 - y, base.r(y, x), base.g(y, x), base.b(y, x));
    syn::paint_position(rotated, idx(200, 300));
    const RgbImage noise = syn::noise_image(base.width(), base.height(), 7);

    const double s_copy = verify_canvas_alignment({copy, "a", AnnotationTemplate::Position, ptr});
    const double s_rot = verify_canvas_alignment({rotated, "a", AnnotationTemplate::Position, ptr});
    const double s_noise = verify_canvas_alignment({noise, "a", AnnotationTemplate::Position, ptr});
    v.require(s_copy > 0.95, "copy scored " + fmt("%.3f", s_copy));
    v.require(s_rot < 0.7, "rotation scored " + fmt("%.3f", s_rot));
    v.require(s_noise < 0.2, "noise scored " + fmt("%.3f", s_noise));
    v.note = "copy " + fmt("%.3f", s_copy) + ", rotated " + fmt("%.3f", s_rot) + ", noise " + fmt("%.3f", s_noise);
    return v;
}

// ---- 6 --------------------------------------------------------------------

Verdict spline_checks()
{
    Verdict v;
    const WorldPoint a(1, 2, 3), b(11, -4, 8);
    const double mid = (build_spline({a, b}).sample(0.5) - (a + b) / 2).norm();
    v.require(mid < 1e-9, "midpoint error " + fmt("%.3g", mid));

    const WorldPoint dir = WorldPoint(3, -1, 0.5).normalized();
    std::vector<WorldPoint> line;
    for (int k = 0; k < 4; ++k)
        line.push_back(WorldPoint(2, 2, 0) + 7.0 * k * dir);
    const SplinePath col = build_spline(line);
    double off = 0;
    for (int s = 0; s <= 256; ++s) {
        const WorldPoint p = col.sample(s / 256.0) - line[0];
        off = std::max(off, (p - p.dot(dir) * dir).norm());
    }
    v.require(off < 1e-9, "collinear deviation " + fmt("%.3g", off));

    std::vector<WorldPoint> arc;
    for (int k = 0; k < 4; ++k) {
        const double t = (M_PI / 2) * k / 3;
        arc.emplace_back(10 * std::cos(t), 10 * std::sin(t), 0);
    }
    const SplinePath circ = build_spline(arc);
    double radial = 0;
    for (int s = 0; s < 256; ++s) {
        const WorldPoint p = circ.sample(s / 255.0);
        radial = std::max(radial, std::abs(std::hypot(p.x(), p.y()) - 10));
    }
    v.require(radial < 0.5, "radial deviation " + fmt("%.3f", radial) + " m");
    v.note = "midpoint " + fmt("%.1g", mid) + ", collinear " + fmt("%.1g", off) + ", radial " + fmt("%.4f", radial) + " m";
    return v;
}

// ---- 7 --------------------------------------------------------------------

int run_cli(const std::string& args, std::string* out = nullptr)
{
    const std::string cmd = std::string(FORGE_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe)
        return -1;
    std::string text;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe))
        text.append(buf, n);
    const int status = ::pclose(pipe);
    if (out)
        *out = text;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict determinism()
{
    Verdict v;
    testing::TempDir root("acceptance_determinism");
    const fs::path input = testing::fixtures_dir() / "shonan_beach_festival";
    const std::string base = "run --input " + input.string() + " --mode replay --fixtures " +
                             (testing::fixtures_dir() / "demo_store").string() + " --seed 42 --config " +
                             (testing::fixtures_dir() / "demo_config.json").string();
    const auto t0 = Clock::now();
    const std::vector<std::pair<std::string, int>> runs = {{"first", 4}, {"second", 4}, {"serial", 1}, {"wide", 8}};
    for (const auto& [name, parallel] : runs) {
        std::string log;
        const int rc = run_cli(base + " --out " + (root / name).string() + " --max-parallel " + std::to_string(parallel), &log);
        v.require(rc == 0, name + " run exited " + std::to_string(rc) + ": " + log);
    }
    const double secs = seconds_since(t0);
    const fs::path event = "shonan_beach_festival";
    for (const char* other : {"second", "serial", "wide"}) {
        const std::string diff = testing::tree_difference(root / "first" / event, root / other / event);
        v.require(diff.empty(), std::string(other) + ": " + diff);
    }
    v.require(secs < 60.0, "runtime " + fmt("%.1f", secs) + " s");
    if (v.pass)
        v.note = "4 runs (parallel 4, 4, 1, 8) identical, " + fmt("%.2f", secs) + " s total";
    return v;
}

// ---- 8 --------------------------------------------------------------------

Verdict table_format()
{
    Verdict v;
    std::string text;
    const int rc = run_cli("report --runs " + (testing::data_dir() / "feasibility_corpus").string(), &text);
    v.require(rc == 0, "report exited " + std::to_string(rc));
    auto row = [&](const std::string& label, std::vector<std::string> cells) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.starts_with(label + " ") && !line.starts_with(label + "|"))
                continue;
            std::vector<std::string> got;
            std::istringstream cols(line.substr(line.find('|') + 1));
            std::string cell;
            while (std::getline(cols, cell, '|')) {
                const auto b = cell.find_first_not_of(' '), e = cell.find_last_not_of(' ');
                got.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
            }
            v.require(got == cells, "row '" + label + "' reads '" + line + "'");
            return;
        }
        v.require(false, "row '" + label + "' missing");
    };
    row("Stage", {"Time (min)", "Count", "Success Rate (%)"});
    row("Photo Analysis", {"0.29", "1.00", "100.00"});
    row("Element Generation", {"10.96", "10.24", "92.58"});
    row("Placement/Route Generation", {"4.45", "11.80", "75.25"});
    row("End-to-End", {"15.70", "--", "--"});
    if (v.pass)
        v.note = "0.29/1.00/100.00, 10.96/10.24/92.58, 4.45/11.80/75.25, 15.70";
    return v;
}

// ---- 9 --------------------------------------------------------------------

Verdict replay_purity()
{
    Verdict v;
    testing::TempDir out("acceptance_purity");
    auto transport = std::make_shared<FailingTransport>();
    RunHooks hooks;
    hooks.transport = transport;
    const PipelineConfig cfg = load_config(testing::fixtures_dir() / "demo_config.json");
    const RunResult r = run_pipeline(testing::fixtures_dir() / "shonan_beach_festival", out.path(), cfg, hooks);
    std::size_t items = 0, failed = 0;
    for (const auto& st : r.log.stages)
        for (const auto& it : st.items) {
            ++items;
            failed += it.outcome == Outcome::Failed;
        }
    v.require(transport->attempts() == 0, std::to_string(transport->attempts()) + " network attempts");
    v.require(failed == 0, std::to_string(failed) + " items failed");
    v.require(fs::is_regular_file(r.out_dir / "scene.json"), "no scene.json");
    if (v.pass)
        v.note = std::to_string(items) + " items ok, 0 network attempts";
    return v;
}

// ---- 10 -------------------------------------------------------------------

bool six_decimals_everywhere(const Json& j)
{
    if (j.is_object() || j.is_array()) {
        for (const auto& x : j)
            if (!six_decimals_everywhere(x))
                return false;
        return true;
    }
    if (!j.is_number_float())
        return true;
    const std::string s = canonical_dump(j);
    const auto dot = s.find('.');
    return dot != std::string::npos && s.size() - dot - 1 == 6;
}

bool keys_sorted(const Json& j)
{
    if (j.is_object()) {
        std::string prev;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first && !(prev < it.key()))
                return false;
            prev = it.key();
            first = false;
            if (!keys_sorted(it.value()))
                return false;
        }
    } else if (j.is_array()) {
        for (const auto& x : j)
            if (!keys_sorted(x))
                return false;
    }
    return true;
}

Verdict manifest_round_trip()
{
    Verdict v;
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 50; ++trial) {
        const SceneManifest m = testing::random_manifest(rng, trial);
        testing::TempDir dir("acceptance_manifest");
        emit(m, dir.path());
        v.require(parse_manifest(dir.path()) == m, "manifest " + std::to_string(trial) + " changed");
        const std::string text = testing::read_text(dir / "scene.json");
        const Json doc = parse_json(text);
        v.require(canonical_dump(doc) == text, "manifest " + std::to_string(trial) + " is not canonical text");
        v.require(six_decimals_everywhere(doc), "manifest " + std::to_string(trial) + " float not six decimals");
        v.require(keys_sorted(doc), "manifest " + std::to_string(trial) + " keys unsorted");
    }
    if (v.pass)
        v.note = "50 manifests";
    return v;
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"schema suite", schema_suite},
        {"particle rule", particle_rule},
        {"projection oracle", projection_oracle},
        {"annotation golden suite", annotation_suite},
        {"alignment check", alignment_check},
        {"spline", spline_checks},
        {"determinism", determinism},
        {"feasibility table format", table_format},
        {"replay purity", replay_purity},
        {"manifest round trip", manifest_round_trip},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.note.c_str());
        std::fflush(stdout);
        failures += !v.pass;
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures ? 1 : 0;
}
