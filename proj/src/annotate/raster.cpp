#include <forge/annotate/raster.hpp>
#include <forge/core/error.hpp>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <fstream>
#include <string>

namespace forge {

RgbImage gray_to_rgb(const Plane<std::uint8_t>& gray)
{
    RgbImage out;
    out.r = gray;
    out.g = gray;
    out.b = gray;
    return out;
}

GrayImage luma(const RgbImage& img)
{
    return 0.299 * img.r.cast<double>() + 0.587 * img.g.cast<double>() + 0.114 * img.b.cast<double>();
}

RgbImage decode_image(std::span<const std::uint8_t> bytes)
{
    if (bytes.empty())
        return {};
    const cv::Mat buf(1, static_cast<int>(bytes.size()), CV_8UC1, const_cast<std::uint8_t*>(bytes.data()));
    cv::Mat bgr;
    try {
        bgr = cv::imdecode(buf, cv::IMREAD_COLOR | cv::IMREAD_IGNORE_ORIENTATION);
    } catch (const cv::Exception&) {
        return {};
    }
    if (bgr.empty())
        return {};
    RgbImage out(bgr.cols, bgr.rows);
    for (int v = 0; v < bgr.rows; ++v) {
        const auto* row = bgr.ptr<cv::Vec3b>(v);
        for (int u = 0; u < bgr.cols; ++u)
            out.set(u, v, row[u][2], row[u][1], row[u][0]);
    }
    return out;
}

Bytes encode_png(const RgbImage& img)
{
    cv::Mat bgr(img.height(), img.width(), CV_8UC3);
    for (int v = 0; v < img.height(); ++v) {
        auto* row = bgr.ptr<cv::Vec3b>(v);
        for (int u = 0; u < img.width(); ++u)
            row[u] = cv::Vec3b(img.b(v, u), img.g(v, u), img.r(v, u));
    }
    std::vector<std::uint8_t> out;
    if (!cv::imencode(".png", bgr, out, {cv::IMWRITE_PNG_COMPRESSION, 6}))
        throw Error(ErrorCode::IoError, "PNG encoding failed");
    return out;
}

Bytes raw_ppm_bytes(const RgbImage& img)
{
    const std::string header = "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    Bytes out(header.begin(), header.end());
    out.reserve(out.size() + static_cast<std::size_t>(img.width()) * img.height() * 3);
    for (int v = 0; v < img.height(); ++v)
        for (int u = 0; u < img.width(); ++u) {
            out.push_back(img.r(v, u));
            out.push_back(img.g(v, u));
            out.push_back(img.b(v, u));
        }
    return out;
}

Bytes read_file(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot read " + file.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& file, std::span<const std::uint8_t> bytes)
{
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write " + file.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error(ErrorCode::IoError, "short write to " + file.string());
}

}  // namespace forge
