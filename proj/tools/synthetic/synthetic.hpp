#pragma once

// Synthetic stand-ins for the hosted services, used to record the demo
// fixture store and by the tests.

#include <forge/annotate/marks.hpp>
#include <forge/core/model.hpp>
#include <forge/geometry/camera.hpp>
#include <forge/geometry/terrain.hpp>
#include <forge/providers/transport.hpp>

#include <array>
#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <set>

namespace forge::synthetic {

using Rgb = std::array<std::uint8_t, 3>;
inline constexpr Rgb kRed{255, 0, 0};
inline constexpr Rgb kBlue{0, 0, 255};

Bytes encode_jpeg(const RgbImage& img, int quality = 90);

/// Little-endian TIFF block: IFD0 with DateTime, an EXIF sub-IFD with
/// DateTimeOriginal, and a GPS IFD in degrees/minutes/seconds.
Bytes exif_tiff(const GeoLocation& loc, const std::string& datetime);
/// Same, without the GPS IFD.
Bytes exif_tiff_without_gps(const std::string& datetime);

/// Inserts an APP1 "Exif" segment right after SOI.
Bytes with_jpeg_exif(const Bytes& jpeg, const Bytes& tiff);
/// Inserts an eXIf chunk right after IHDR.
Bytes with_png_exif(const Bytes& png, const Bytes& tiff);

/// Fills pixels whose centers lie within `radius` of continuous point `c`.
void stamp_disk(RgbImage& img, const Pixel& c, double radius, Rgb color);
/// Capsule of the given full width between two continuous points.
void draw_segment(RgbImage& img, const Pixel& a, const Pixel& b, double width, Rgb color);

void paint_position(RgbImage& img, const Pixel& p, double radius = 6.0);
void paint_area(RgbImage& img, const PixelPolygon& poly, double line_width = 4.0);
/// Red 8 px path with vertex dots and a blue start dot over the first segment.
void paint_route(RgbImage& img, const std::vector<Pixel>& path, double line_width = 8.0);

RgbImage noise_image(int width, int height, std::uint64_t seed);

/// Ground truth for one painted element, in world ground coordinates.
struct PaintTruth {
    AnnotationTemplate kind = AnnotationTemplate::Position;
    std::vector<GroundPoint> ground;
};

/// Deterministic stand-in for every provider kind. Annotation requests are
/// matched to a truth entry by the longest key contained in the prompt.
class ScriptedTransport final : public Transport {
public:
    ScriptedTransport(std::string scene_json, OrthoCameraSpec camera, std::map<std::string, PaintTruth> truths);

    Bytes send(const ProviderRequest& req) override;
    std::string provider_tag(ProviderKind kind) const override;

    std::set<std::string> noisy;              // truth keys answered with noise canvases
    std::string location_json;                // location_estimate payload
    std::string classifier_json;              // particle classifier payload
    std::size_t calls() const { return calls_.load(); }

private:
    Bytes paint(const ProviderRequest& req) const;

    std::string scene_json_;
    OrthoCameraSpec camera_;
    std::map<std::string, PaintTruth> truths_;
    std::atomic<std::size_t> calls_{0};
};

/// Continuous pixel coordinates of a ground point.
Pixel to_pixel(const GroundPoint& g, const OrthoCameraSpec& cam);

/// The shipped beach-festival event: photos, terrain and the scripted
/// answers used to record its fixture store.
struct DemoEvent {
    std::string event_id = "shonan_beach_festival";
    OrthoCameraSpec camera;
    std::string scene_json;
    std::map<std::string, PaintTruth> truths;
    GeoLocation location{35.3006, 139.4800, 3.0};
};

DemoEvent demo_event();
/// Writes five EXIF-tagged JPEGs and terrain.json into `dir`.
void write_demo_photos(const DemoEvent& ev, const std::filesystem::path& dir);
TerrainModel demo_terrain();
/// Three placeholder figures plus catalog.json.
void write_stock_catalog(const std::filesystem::path& dir);
std::shared_ptr<ScriptedTransport> demo_transport(const DemoEvent& ev);

}  // namespace forge::synthetic
