#include "synthetic.hpp"

#include <forge/core/error.hpp>
#include <forge/layers/gltf.hpp>

#include <opencv2/imgcodecs.hpp>

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>

namespace forge::synthetic {

Bytes encode_jpeg(const RgbImage& img, int quality)
{
    cv::Mat bgr(img.height(), img.width(), CV_8UC3);
    for (int v = 0; v < img.height(); ++v)
        for (int u = 0; u < img.width(); ++u)
            bgr.at<cv::Vec3b>(v, u) = {img.b(v, u), img.g(v, u), img.r(v, u)};
    std::vector<std::uint8_t> out;
    cv::imencode(".jpg", bgr, out, {cv::IMWRITE_JPEG_QUALITY, quality});
    return out;
}

namespace {

struct TiffWriter {
    Bytes data;
    void u16(std::uint16_t v) { data.insert(data.end(), {std::uint8_t(v), std::uint8_t(v >> 8)}); }
    void u32(std::uint32_t v)
    {
        for (int i = 0; i < 4; ++i)
            data.push_back(std::uint8_t(v >> (8 * i)));
    }
    void put16(std::size_t off, std::uint16_t v)
    {
        data[off] = std::uint8_t(v);
        data[off + 1] = std::uint8_t(v >> 8);
    }
    void put32(std::size_t off, std::uint32_t v)
    {
        for (int i = 0; i < 4; ++i)
            data[off + i] = std::uint8_t(v >> (8 * i));
    }
};

struct Field {
    std::uint16_t tag;
    std::uint16_t type;
    std::uint32_t count;
    Bytes value;  // raw little-endian bytes
};

Bytes rationals(std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> rs)
{
    TiffWriter w;
    for (const auto& [n, d] : rs) {
        w.u32(n);
        w.u32(d);
    }
    return w.data;
}

Bytes ascii(const std::string& s)
{
    Bytes b(s.begin(), s.end());
    b.push_back(0);
    return b;
}

/// Writes an IFD at the end of `w`; values over 4 bytes go after it.
/// Returns offsets of the value slots so pointers can be patched.
std::vector<std::size_t> write_ifd(TiffWriter& w, const std::vector<Field>& fields)
{
    const std::size_t start = w.data.size();
    const std::size_t extra_start = start + 2 + fields.size() * 12 + 4;
    w.u16(static_cast<std::uint16_t>(fields.size()));
    std::vector<std::size_t> slots;
    Bytes extra;
    for (const auto& f : fields) {
        w.u16(f.tag);
        w.u16(f.type);
        w.u32(f.count);
        slots.push_back(w.data.size());
        if (f.value.size() <= 4) {
            Bytes v = f.value;
            v.resize(4, 0);
            w.data.insert(w.data.end(), v.begin(), v.end());
        } else {
            w.u32(static_cast<std::uint32_t>(extra_start + extra.size()));
            extra.insert(extra.end(), f.value.begin(), f.value.end());
            if (extra.size() % 2)
                extra.push_back(0);
        }
    }
    w.u32(0);
    w.data.insert(w.data.end(), extra.begin(), extra.end());
    return slots;
}

std::array<std::pair<std::uint32_t, std::uint32_t>, 3> dms(double deg)
{
    deg = std::abs(deg);
    const auto d = static_cast<std::uint32_t>(deg);
    const double mf = (deg - d) * 60.0;
    const auto m = static_cast<std::uint32_t>(mf);
    const auto s = static_cast<std::uint32_t>(std::llround((mf - m) * 60.0 * 10000.0));
    return {{{d, 1}, {m, 1}, {s, 10000}}};
}

Bytes build_tiff(const GeoLocation* loc, const std::string& datetime)
{
    TiffWriter w;
    w.data = {'I', 'I'};
    w.u16(42);
    w.u32(8);

    std::vector<Field> ifd0 = {{0x0132, 2, std::uint32_t(datetime.size() + 1), ascii(datetime)},
                               {0x8769, 4, 1, Bytes(4, 0)}};
    if (loc)
        ifd0.push_back({0x8825, 4, 1, Bytes(4, 0)});
    const auto slots0 = write_ifd(w, ifd0);

    w.put32(slots0[1], static_cast<std::uint32_t>(w.data.size()));
    write_ifd(w, {{0x9003, 2, std::uint32_t(datetime.size() + 1), ascii(datetime)}});

    if (loc) {
        w.put32(slots0[2], static_cast<std::uint32_t>(w.data.size()));
        const auto lat = dms(loc->latitude), lon = dms(loc->longitude);
        const auto alt = static_cast<std::uint32_t>(std::llround(std::abs(loc->altitude) * 100));
        write_ifd(w, {{1, 2, 2, ascii(loc->latitude < 0 ? "S" : "N")},
                      {2, 5, 3, rationals({lat[0], lat[1], lat[2]})},
                      {3, 2, 2, ascii(loc->longitude < 0 ? "W" : "E")},
                      {4, 5, 3, rationals({lon[0], lon[1], lon[2]})},
                      {5, 1, 1, Bytes{std::uint8_t(loc->altitude < 0 ? 1 : 0)}},
                      {6, 5, 1, rationals({{alt, 100}})}});
    }
    return w.data;
}

}  // namespace

Bytes exif_tiff(const GeoLocation& loc, const std::string& datetime) { return build_tiff(&loc, datetime); }
Bytes exif_tiff_without_gps(const std::string& datetime) { return build_tiff(nullptr, datetime); }

Bytes with_jpeg_exif(const Bytes& jpeg, const Bytes& tiff)
{
    if (jpeg.size() < 2 || jpeg[0] != 0xFF || jpeg[1] != 0xD8)
        throw Error(ErrorCode::InvalidArgument, "not a JPEG");
    const std::size_t len = tiff.size() + 8;
    Bytes out{0xFF, 0xD8, 0xFF, 0xE1, std::uint8_t(len >> 8), std::uint8_t(len & 0xFF), 'E', 'x', 'i', 'f', 0, 0};
    out.insert(out.end(), tiff.begin(), tiff.end());
    out.insert(out.end(), jpeg.begin() + 2, jpeg.end());
    return out;
}

Bytes with_png_exif(const Bytes& png, const Bytes& tiff)
{
    if (png.size() < 33)
        throw Error(ErrorCode::InvalidArgument, "not a PNG");
    const std::size_t ihdr_end = 8 + 8 + 13 + 4;
    Bytes chunk;
    const auto n = static_cast<std::uint32_t>(tiff.size());
    chunk.insert(chunk.end(), {std::uint8_t(n >> 24), std::uint8_t(n >> 16), std::uint8_t(n >> 8), std::uint8_t(n)});
    chunk.insert(chunk.end(), {'e', 'X', 'I', 'f'});
    chunk.insert(chunk.end(), tiff.begin(), tiff.end());
    const uLong crc = crc32(crc32(0L, Z_NULL, 0), chunk.data() + 4, static_cast<uInt>(chunk.size() - 4));
    chunk.insert(chunk.end(), {std::uint8_t(crc >> 24), std::uint8_t(crc >> 16), std::uint8_t(crc >> 8), std::uint8_t(crc)});
    Bytes out(png.begin(), png.begin() + ihdr_end);
    out.insert(out.end(), chunk.begin(), chunk.end());
    out.insert(out.end(), png.begin() + ihdr_end, png.end());
    return out;
}

// ---- painting ---------------------------------------------------------------

namespace {

void put(RgbImage& img, int u, int v, Rgb c)
{
    if (u < 0 || v < 0 || u >= img.width() || v >= img.height())
        return;
    img.r(v, u) = c[0];
    img.g(v, u) = c[1];
    img.b(v, u) = c[2];
}

}  // namespace

void stamp_disk(RgbImage& img, const Pixel& c, double radius, Rgb color)
{
    const int u0 = int(std::floor(c.x() - radius)), u1 = int(std::ceil(c.x() + radius));
    const int v0 = int(std::floor(c.y() - radius)), v1 = int(std::ceil(c.y() + radius));
    for (int v = v0; v <= v1; ++v)
        for (int u = u0; u <= u1; ++u)
            if ((Pixel(u + 0.5, v + 0.5) - c).squaredNorm() <= radius * radius)
                put(img, u, v, color);
}

void draw_segment(RgbImage& img, const Pixel& a, const Pixel& b, double width, Rgb color)
{
    const double r = width / 2;
    const int u0 = int(std::floor(std::min(a.x(), b.x()) - r)), u1 = int(std::ceil(std::max(a.x(), b.x()) + r));
    const int v0 = int(std::floor(std::min(a.y(), b.y()) - r)), v1 = int(std::ceil(std::max(a.y(), b.y()) + r));
    const Pixel ab = b - a;
    const double len2 = ab.squaredNorm();
    for (int v = v0; v <= v1; ++v)
        for (int u = u0; u <= u1; ++u) {
            const Pixel p(u + 0.5, v + 0.5);
            const double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
            if ((p - (a + t * ab)).squaredNorm() <= r * r)
                put(img, u, v, color);
        }
}

void paint_position(RgbImage& img, const Pixel& p, double radius) { stamp_disk(img, p, radius, kRed); }

void paint_area(RgbImage& img, const PixelPolygon& poly, double line_width)
{
    for (std::size_t i = 0; i < poly.size(); ++i) {
        draw_segment(img, poly[i], poly[(i + 1) % poly.size()], line_width, kRed);
        stamp_disk(img, poly[i], line_width / 2, kRed);
    }
}

void paint_route(RgbImage& img, const std::vector<Pixel>& path, double line_width)
{
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        draw_segment(img, path[i], path[i + 1], line_width, kRed);
    for (const auto& p : path)
        stamp_disk(img, p, line_width * 0.75, kRed);
    stamp_disk(img, path.front(), line_width, kBlue);
}

RgbImage noise_image(int width, int height, std::uint64_t seed)
{
    RgbImage img;
    img.r = img.g = img.b = Plane<std::uint8_t>(height, width);
    std::uint64_t s = seed * 0x9E3779B97F4A7C15ull + 1;
    auto next = [&] {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return std::uint8_t(s >> 56);
    };
    for (int v = 0; v < height; ++v)
        for (int u = 0; u < width; ++u) {
            img.r(v, u) = next();
            img.g(v, u) = next();
            img.b(v, u) = next();
        }
    return img;
}

Pixel to_pixel(const GroundPoint& g, const OrthoCameraSpec& cam) { return ground_to_pixel(g, cam); }

// ---- transport --------------------------------------------------------------

ScriptedTransport::ScriptedTransport(std::string scene_json, OrthoCameraSpec camera, std::map<std::string, PaintTruth> truths)
    : scene_json_(std::move(scene_json)), camera_(camera), truths_(std::move(truths))
{
}

std::string ScriptedTransport::provider_tag(ProviderKind kind) const
{
    return "scripted/" + std::string(to_string(kind));
}

namespace {

std::uint64_t text_hash(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s)
        h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
    return h;
}

Bytes as_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

}  // namespace

Bytes ScriptedTransport::paint(const ProviderRequest& req) const
{
    if (req.inputs.empty())
        throw Error(ErrorCode::TransportError, "annotation request without a canvas");
    const std::string* key = nullptr;
    for (const auto& [k, truth] : truths_)
        if (req.prompt.find(k) != std::string::npos && (!key || k.size() > key->size()))
            key = &k;
    RgbImage canvas = decode_image(*req.inputs.front().bytes);
    if (!key)
        return encode_png(canvas);  // nothing to draw
    if (noisy.count(*key))
        return encode_png(noise_image(canvas.width(), canvas.height(), text_hash(*key)));

    const PaintTruth& truth = truths_.at(*key);
    std::vector<Pixel> px;
    for (const auto& g : truth.ground)
        px.push_back(to_pixel(g, camera_));
    switch (truth.kind) {
    case AnnotationTemplate::Position: paint_position(canvas, px.front()); break;
    case AnnotationTemplate::Area: paint_area(canvas, px); break;
    case AnnotationTemplate::Route: paint_route(canvas, px); break;
    }
    return encode_png(canvas);
}

Bytes ScriptedTransport::send(const ProviderRequest& req)
{
    ++calls_;
    const std::uint64_t h = text_hash(req.prompt);
    switch (req.kind) {
    case ProviderKind::SceneAnalysis:
        return as_bytes(req.params.count("classifier") ? classifier_json : scene_json_);
    case ProviderKind::LocationEstimate:
        if (location_json.empty())
            throw Error(ErrorCode::TransportError, "no scripted location");
        return as_bytes(location_json);
    case ProviderKind::Segmentation: {
        RgbImage img = decode_image(*req.inputs.front().bytes);
        const int w = img.width(), hgt = img.height();
        for (int v = 0; v < hgt; ++v)
            for (int u = 0; u < w; ++u)
                if (std::abs(u - w / 2) > w / 4 || std::abs(v - hgt / 2) > hgt / 4) {
                    img.r(v, u) = img.g(v, u) = img.b(v, u) = 0;
                }
        return encode_png(img);
    }
    case ProviderKind::AssetGeneration: {
        const double width = 0.5 + double(h % 100) / 100.0;
        const double height = 1.0 + double((h >> 8) % 100) / 50.0;
        const double depth = 0.5 + double((h >> 16) % 100) / 100.0;
        return make_box_glb({width, height, depth}, {std::uint8_t(h >> 24), std::uint8_t(h >> 32), std::uint8_t(h >> 40)});
    }
    case ProviderKind::TextureGeneration: {
        RgbImage tex;
        tex.r = tex.g = tex.b = Plane<std::uint8_t>(64, 64);
        for (int v = 0; v < 64; ++v)
            for (int u = 0; u < 64; ++u) {
                const bool check = ((u / 8) + (v / 8)) % 2 == 0;
                tex.r(v, u) = std::uint8_t(check ? (h & 0xFF) : 240);
                tex.g(v, u) = std::uint8_t(check ? ((h >> 8) & 0xFF) : 240);
                tex.b(v, u) = std::uint8_t(check ? ((h >> 16) & 0xFF) : 240);
            }
        return encode_png(tex);
    }
    case ProviderKind::AnnotationPainting: return paint(req);
    }
    throw Error(ErrorCode::TransportError, "unsupported kind");
}

}  // namespace forge::synthetic

// ---- demo event -------------------------------------------------------------

namespace forge::synthetic {

namespace {

std::vector<GroundPoint> pts(std::initializer_list<std::pair<double, double>> xs)
{
    std::vector<GroundPoint> out;
    for (const auto& [e, n] : xs)
        out.emplace_back(e, n);
    return out;
}

}  // namespace

DemoEvent demo_event()
{
    DemoEvent ev;
    ev.camera.extent_east = ev.camera.extent_north = 200;
    ev.camera.image_width = ev.camera.image_height = 512;

    const Json scene = {
        {"event_summary",
         {{"scene_type", "summer festival"},
          {"location_context", "beach promenade by the sea"},
          {"environment", "outdoor"},
          {"time_of_day", "sunset"},
          {"weather", "clear"},
          {"overall_description", "Evening beach festival with a Ferris wheel, a crowd on the sand and boats offshore."}}},
        {"objects",
         {{"object01",
           {{"images", {"photo01", "photo02"}},
            {"label", "Ferris wheel"},
            {"description", "white Ferris wheel with colored gondolas"},
            {"animation", "static"},
            {"size", "large"},
            {"confidence", 0.92}}},
          {"object02",
           {{"images", {"photo03"}},
            {"label", "hot air balloon"},
            {"description", "striped hot air balloon above the beach"},
            {"animation", "floating"},
            {"size", "large"},
            {"confidence", 0.81}}},
          {"object03",
           {{"images", {"photo04"}},
            {"label", "sailboat"},
            {"description", "small white sailboat"},
            {"animation", "sailing"},
            {"size", "medium"},
            {"confidence", 0.77}}}}},
        {"humans",
         {{"human01",
           {{"images", {"photo01", "photo02"}},
            {"count_type", "group"},
            {"description", "festival crowd on the sand"},
            {"animation", "walking"},
            {"pose_or_activity", "strolling between stalls"},
            {"confidence", 0.88}}},
          {"human02",
           {{"images", {"photo04"}},
            {"count_type", "individual"},
            {"description", "surfer walking along the shore"},
            {"animation", "walking"},
            {"pose_or_activity", "carrying a surfboard"},
            {"confidence", 0.74}}},
          {"human03",
           {{"images", {"photo05"}},
            {"count_type", "individual"},
            {"description", "street dancer near the stage"},
            {"animation", "dancing"},
            {"pose_or_activity", "dancing"},
            {"confidence", 0.69}}}}},
        {"geography",
         {{"geo01",
           {{"images", {"photo01", "photo02", "photo05"}},
            {"type", "beach"},
            {"description", "pale sand beach with footprints"},
            {"dynamic_state", "static"},
            {"confidence", 0.9}}},
          {"geo02",
           {{"images", {"photo03", "photo04"}},
            {"type", "ocean"},
            {"description", "calm ocean with small waves"},
            {"dynamic_state", "waving"},
            {"confidence", 0.86}}}}},
        {"lighting",
         {{"light01",
           {{"images", {"photo03"}},
            {"type", "sunset"},
            {"description", "low orange sun over the sea"},
            {"intensity", "medium"},
            {"direction_or_area", "west, low on the horizon"},
            {"confidence", 0.84}}},
          {"light02",
           {{"images", {"photo02"}},
            {"type", "decorative_light"},
            {"description", "colored bulbs on the Ferris wheel"},
            {"intensity", "medium"},
            {"direction_or_area", "Ferris wheel rim"},
            {"confidence", 0.72}}},
          {"light03",
           {{"images", {"photo05"}},
            {"type", "streetlight"},
            {"description", "promenade streetlight"},
            {"intensity", "low"},
            {"direction_or_area", "promenade"},
            {"confidence", 0.6}}}}},
        {"particles",
         {{"particle01",
           {{"images", {"photo03"}},
            {"type", "mist"},
            {"description", "light sea mist"},
            {"intensity", "medium"},
            {"confidence", 0.55}}},
          {"particle02",
           {{"images", {"photo05"}},
            {"type", "blossoms"},
            {"description", "paper blossoms thrown by the crowd"},
            {"intensity", "unknown"},
            {"confidence", 0.4}}}}}};
    ev.scene_json = scene.dump();

    using T = AnnotationTemplate;
    ev.truths = {
        {"Ferris wheel", {T::Position, pts({{30, 40}})}},
        {"hot air balloon", {T::Position, pts({{-40, 55}})}},
        {"sailboat", {T::Route, pts({{-70, -78}, {-25, -68}, {20, -82}, {65, -72}})}},
        {"festival crowd on the sand", {T::Area, pts({{-12, -2}, {24, -6}, {28, 22}, {-8, 26}})}},
        {"surfer walking along the shore", {T::Route, pts({{-75, -45}, {-35, -38}, {5, -46}, {50, -40}})}},
        {"street dancer near the stage", {T::Area, pts({{48, 2}, {60, 2}, {60, 12}, {48, 12}})}},
        {"calm ocean with small waves", {T::Area, pts({{-92, -92}, {92, -92}, {92, -58}, {-92, -56}})}},
        {"promenade streetlight", {T::Position, pts({{-22, 18}})}},
    };
    return ev;
}

TerrainModel demo_terrain()
{
    TerrainModel::Grid h(21, 21);
    for (int j = 0; j < 21; ++j)
        for (int i = 0; i < 21; ++i) {
            const double e = -100 + 10.0 * i, n = -100 + 10.0 * j;
            const double slope = std::max(0.0, n + 60) * 0.05;
            const double hill = 9.0 * std::exp(-((e - 55) * (e - 55) + (n - 70) * (n - 70)) / (2 * 22.0 * 22.0));
            h(j, i) = std::round((slope + hill) * 1000) / 1000;
        }
    return TerrainModel(h, -100, -100, 10);
}

void write_demo_photos(const DemoEvent& ev, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    for (int k = 0; k < 5; ++k) {
        RgbImage img(320, 240);
        for (int v = 0; v < 240; ++v)
            for (int u = 0; u < 320; ++u) {
                const bool sky = v < 100 + 10 * k;
                const double t = double(v) / 240;
                if (sky)
                    img.set(u, v, std::uint8_t(250 - 40 * t), std::uint8_t(150 + 30 * t), std::uint8_t(90 + 60 * t));
                else
                    img.set(u, v, std::uint8_t(60 + 20 * k), std::uint8_t(110 + 30 * t), std::uint8_t(160 - 40 * t));
            }
        stamp_disk(img, Pixel(60.0 + 50 * k, 70.0), 18 + 3 * k, {250, 230, 120});
        draw_segment(img, Pixel(20, 200 - 5 * k), Pixel(300, 170 + 4 * k), 6, {230, 210, 170});
        GeoLocation loc = ev.location;
        loc.latitude += 0.00002 * (k - 2);
        loc.longitude += 0.00003 * ((k * 7) % 5 - 2);
        char stamp[32];
        std::snprintf(stamp, sizeof stamp, "2025:08:02 18:%02d:00", 12 + 3 * k);
        char name[32];
        std::snprintf(name, sizeof name, "photo%02d.jpg", k + 1);
        const Bytes jpeg = with_jpeg_exif(encode_jpeg(img), exif_tiff(loc, stamp));
        write_file(dir / name, jpeg);
    }
    const std::string terrain = canonical_dump(terrain_to_json(demo_terrain()));
    write_file(dir / "terrain.json", std::span(reinterpret_cast<const std::uint8_t*>(terrain.data()), terrain.size()));
}

void write_stock_catalog(const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    struct Fig {
        const char* id;
        std::array<double, 3> size;
        Rgb color;
        std::vector<std::string> clips;
    };
    const std::vector<Fig> figs = {{"walker_a", {0.5, 1.75, 0.3}, {200, 80, 60}, {"walking", "running"}},
                                   {"walker_b", {0.45, 1.62, 0.28}, {60, 120, 200}, {"walking", "dancing"}},
                                   {"walker_c", {0.55, 1.8, 0.32}, {90, 170, 90}, {"walking", "running", "dancing"}}};
    Json list = Json::array();
    for (const auto& f : figs) {
        const Bytes glb = make_box_glb({f.size[0], f.size[1], f.size[2]}, f.color);
        write_file(dir / (std::string(f.id) + ".glb"), glb);
        list.push_back({{"id", f.id}, {"file", std::string(f.id) + ".glb"}, {"clips", f.clips}, {"nominal_height", f.size[1]}});
    }
    const std::string text = Json{{"figures", list}}.dump(2) + "\n";
    write_file(dir / "catalog.json", std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::shared_ptr<ScriptedTransport> demo_transport(const DemoEvent& ev)
{
    auto t = std::make_shared<ScriptedTransport>(ev.scene_json, ev.camera, ev.truths);
    t->location_json = Json{{"results", {{"latitude", ev.location.latitude},
                                         {"longitude", ev.location.longitude},
                                         {"height", ev.location.altitude}}}}
                           .dump();
    t->classifier_json = R"({"effects":{"rain":{"enabled":false,"intensity":"low"},"snow":{"enabled":false,"intensity":"low"},"fog":{"enabled":true,"intensity":"medium"},"cloud":{"enabled":false,"intensity":"low"},"blossom":{"enabled":true,"intensity":"low"}}})";
    return t;
}

}  // namespace forge::synthetic
