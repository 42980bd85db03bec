#pragma once

#include <forge/annotate/raster.hpp>
#include <forge/core/model.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace forge {

struct PhotoRecord {
    std::string id;        // file name without extension
    std::string filename;
    Bytes raw;             // file bytes as read from disk
    RgbImage pixels;
    std::optional<std::string> capture_time;  // EXIF "YYYY:MM:DD HH:MM:SS"
    std::optional<GeoLocation> exif_location;
};

struct PhotoCollection {
    std::string event_id;
    std::vector<PhotoRecord> photos;  // ordered by file name

    std::vector<std::string> ids() const;
};

inline constexpr std::size_t kMaxPhotosPerEvent = 16;

/// Loads every .jpg/.jpeg/.png file in `input_dir` (other files are
/// ignored). The event id is the directory name.
/// Throws EmptyCollection, UndecodableImage(filename), or InvalidArgument
/// for duplicate ids or more than 16 photos.
PhotoCollection load_collection(const std::filesystem::path& input_dir);

struct ExifInfo {
    std::optional<GeoLocation> location;
    std::optional<std::string> capture_time;
};

/// Reads the TIFF/EXIF block of a JPEG (APP1) or PNG (eXIf chunk). Missing
/// or malformed metadata yields empty fields, never an error.
ExifInfo read_exif(std::span<const std::uint8_t> image_bytes);

/// GPS position in signed decimal degrees; altitude defaults to 0.
std::optional<GeoLocation> extract_exif_location(std::span<const std::uint8_t> image_bytes);

/// Great-circle distance in meters (haversine, mean Earth radius).
double haversine_distance(const GeoLocation& a, const GeoLocation& b);

/// Drops locations farther than `outlier_radius_m` from the per-coordinate
/// median and averages the rest component-wise. If every point is an
/// outlier, the point nearest the median is returned.
GeoLocation aggregate_locations(const std::vector<GeoLocation>& locations, double outlier_radius_m = 1000.0);

}  // namespace forge
