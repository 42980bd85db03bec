#include <forge/core/error.hpp>
#include <forge/ingest/photo.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

namespace forge {

namespace fs = std::filesystem;

std::vector<std::string> PhotoCollection::ids() const
{
    std::vector<std::string> out;
    for (const auto& p : photos)
        out.push_back(p.id);
    return out;
}

namespace {

bool is_image_file(const fs::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

}  // namespace

PhotoCollection load_collection(const fs::path& input_dir)
{
    std::error_code ec;
    if (!fs::is_directory(input_dir, ec))
        throw Error(ErrorCode::IoError, "input directory " + input_dir.string() + " does not exist");

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(input_dir))
        if (entry.is_regular_file() && is_image_file(entry.path()))
            files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    if (files.empty())
        throw Error(ErrorCode::EmptyCollection, "no JPEG/PNG photos in " + input_dir.string());
    if (files.size() > kMaxPhotosPerEvent)
        throw Error(ErrorCode::InvalidArgument, std::to_string(files.size()) + " photos exceed the limit of " +
                                                    std::to_string(kMaxPhotosPerEvent));

    PhotoCollection collection;
    collection.event_id = fs::absolute(input_dir).lexically_normal().filename().string();
    if (collection.event_id.empty())
        collection.event_id = fs::absolute(input_dir).lexically_normal().parent_path().filename().string();

    std::set<std::string> seen;
    for (const auto& file : files) {
        PhotoRecord rec;
        rec.filename = file.filename().string();
        rec.id = file.stem().string();
        if (!seen.insert(rec.id).second)
            throw Error(ErrorCode::InvalidArgument, "duplicate photo id '" + rec.id + "'");
        rec.raw = read_file(file);
        rec.pixels = decode_image(rec.raw);
        if (rec.pixels.width() < 1 || rec.pixels.height() < 1)
            throw Error(ErrorCode::UndecodableImage, rec.filename);
        const auto exif = read_exif(rec.raw);
        rec.exif_location = exif.location;
        rec.capture_time = exif.capture_time;
        collection.photos.push_back(std::move(rec));
    }
    return collection;
}

double haversine_distance(const GeoLocation& a, const GeoLocation& b)
{
    constexpr double kEarthRadius = 6371008.8;
    constexpr double kRad = M_PI / 180.0;
    const double dlat = (b.latitude - a.latitude) * kRad;
    const double dlon = (b.longitude - a.longitude) * kRad;
    const double s = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(a.latitude * kRad) * std::cos(b.latitude * kRad) * std::sin(dlon / 2) * std::sin(dlon / 2);
    return 2 * kEarthRadius * std::asin(std::min(1.0, std::sqrt(s)));
}

namespace {

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace

GeoLocation aggregate_locations(const std::vector<GeoLocation>& locations, double outlier_radius_m)
{
    if (locations.empty())
        throw Error(ErrorCode::InvalidArgument, "cannot aggregate an empty location list");

    std::vector<double> lat, lon, alt;
    for (const auto& l : locations) {
        lat.push_back(l.latitude);
        lon.push_back(l.longitude);
        alt.push_back(l.altitude);
    }
    const GeoLocation center{median(lat), median(lon), median(alt)};

    // sorted survivors make the mean independent of input order
    std::vector<GeoLocation> kept;
    for (const auto& l : locations)
        if (haversine_distance(l, center) <= outlier_radius_m)
            kept.push_back(l);
    auto order = [](const GeoLocation& a, const GeoLocation& b) {
        return std::tie(a.latitude, a.longitude, a.altitude) < std::tie(b.latitude, b.longitude, b.altitude);
    };
    if (kept.empty()) {
        std::vector<GeoLocation> sorted = locations;
        std::sort(sorted.begin(), sorted.end(), order);
        return *std::min_element(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
            return haversine_distance(a, center) < haversine_distance(b, center);
        });
    }
    std::sort(kept.begin(), kept.end(), order);
    GeoLocation mean{0, 0, 0};
    for (const auto& l : kept) {
        mean.latitude += l.latitude;
        mean.longitude += l.longitude;
        mean.altitude += l.altitude;
    }
    const double n = double(kept.size());
    return {mean.latitude / n, mean.longitude / n, mean.altitude / n};
}

}  // namespace forge
