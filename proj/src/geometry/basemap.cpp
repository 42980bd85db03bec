#include <forge/geometry/basemap.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace forge {

namespace {

double lattice_noise(std::int64_t i, std::int64_t j)
{
    std::uint64_t h = static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(j) * 0xC2B2AE3D27D4EB4FULL;
    h ^= h >> 31;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 29;
    return double(h >> 11) / double(1ULL << 53);
}

/// Smooth value noise in [0, 1) on a lattice of `spacing` meters.
double value_noise(double east, double north, double spacing)
{
    const double x = east / spacing, y = north / spacing;
    const auto i = static_cast<std::int64_t>(std::floor(x));
    const auto j = static_cast<std::int64_t>(std::floor(y));
    double tx = x - double(i), ty = y - double(j);
    tx = tx * tx * (3 - 2 * tx);
    ty = ty * ty * (3 - 2 * ty);
    const double a = lattice_noise(i, j), b = lattice_noise(i + 1, j);
    const double c = lattice_noise(i, j + 1), d = lattice_noise(i + 1, j + 1);
    return (1 - ty) * ((1 - tx) * a + tx * b) + ty * ((1 - tx) * c + tx * d);
}

}  // namespace

RgbImage render_base_map(const TerrainModel& terrain, const OrthoCameraSpec& cam)
{
    cam.check();
    Plane<std::uint8_t> gray(cam.image_height, cam.image_width);
    const double step = std::max(cam.meters_per_pixel_east(), cam.meters_per_pixel_north());
    const Vector3<double> light = Vector3<double>(-1.0, 1.0, std::sqrt(2.0)).normalized();  // from the north-west
    for (int v = 0; v < cam.image_height; ++v) {
        for (int u = 0; u < cam.image_width; ++u) {
            const GroundPoint g = pixel_to_ground(Pixel(u + 0.5, v + 0.5), cam);
            const double dhde = (terrain.height(g.x() + step, g.y()) - terrain.height(g.x() - step, g.y())) / (2 * step);
            const double dhdn = (terrain.height(g.x(), g.y() + step) - terrain.height(g.x(), g.y() - step)) / (2 * step);
            const Vector3<double> normal = Vector3<double>(-dhde, -dhdn, 1.0).normalized();
            const double shade = std::max(0.0, normal.dot(light));

            const double texture = 0.6 * value_noise(g.x(), g.y(), 6.0) + 0.4 * value_noise(g.x(), g.y(), 1.5);
            const double h = terrain.height(g);
            const double contour = std::abs(h / 5.0 - std::round(h / 5.0)) * 5.0 < 0.5 * step ? -45.0 : 0.0;

            const double value = 30.0 + 150.0 * shade + 60.0 * texture + contour;
            gray(v, u) = static_cast<std::uint8_t>(std::clamp(std::lround(value), 0L, 255L));
        }
    }
    return gray_to_rgb(gray);
}

}  // namespace forge
