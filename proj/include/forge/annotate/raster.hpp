#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace forge {

using Bytes = std::vector<std::uint8_t>;

template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Binary mask, indexed (row = v, col = u).
using Mask = Plane<bool>;
using GrayImage = Plane<double>;

/// 8-bit RGB raster stored as three planes, indexed (row = v, col = u).
struct RgbImage {
    Plane<std::uint8_t> r, g, b;

    RgbImage() = default;
    RgbImage(int width, int height, std::uint8_t fill = 0)
        : r(Plane<std::uint8_t>::Constant(height, width, fill)),
          g(Plane<std::uint8_t>::Constant(height, width, fill)),
          b(Plane<std::uint8_t>::Constant(height, width, fill))
    {
    }

    int width() const { return static_cast<int>(r.cols()); }
    int height() const { return static_cast<int>(r.rows()); }

    void set(int u, int v, std::uint8_t red, std::uint8_t green, std::uint8_t blue)
    {
        r(v, u) = red;
        g(v, u) = green;
        b(v, u) = blue;
    }

    bool operator==(const RgbImage& o) const
    {
        return width() == o.width() && height() == o.height() && (r == o.r).all() && (g == o.g).all() &&
               (b == o.b).all();
    }
};

/// Single-channel image replicated into RGB.
RgbImage gray_to_rgb(const Plane<std::uint8_t>& gray);

/// ITU-R BT.601 luma, in [0, 255].
GrayImage luma(const RgbImage& img);

/// Decodes PNG or JPEG bytes (EXIF orientation is ignored). Returns an empty
/// image (0x0) when the bytes are not a decodable raster.
RgbImage decode_image(std::span<const std::uint8_t> bytes);

Bytes encode_png(const RgbImage& img);

/// Binary PPM (P6) serialization; the canonical byte form of a raster that
/// the pipeline rendered itself.
Bytes raw_ppm_bytes(const RgbImage& img);

Bytes read_file(const std::filesystem::path& file);
void write_file(const std::filesystem::path& file, std::span<const std::uint8_t> bytes);

}  // namespace forge
