#include <forge/core/error.hpp>
#include <forge/ingest/photo.hpp>

#include <cmath>
#include <cstring>

namespace forge {

namespace {

constexpr std::uint16_t kTagExifIfd = 0x8769;
constexpr std::uint16_t kTagGpsIfd = 0x8825;
constexpr std::uint16_t kTagDateTime = 0x0132;
constexpr std::uint16_t kTagDateTimeOriginal = 0x9003;
constexpr std::uint16_t kGpsLatitudeRef = 1;
constexpr std::uint16_t kGpsLatitude = 2;
constexpr std::uint16_t kGpsLongitudeRef = 3;
constexpr std::uint16_t kGpsLongitude = 4;
constexpr std::uint16_t kGpsAltitudeRef = 5;
constexpr std::uint16_t kGpsAltitude = 6;

enum : std::uint16_t { kByte = 1, kAscii = 2, kShort = 3, kLong = 4, kRational = 5 };

std::size_t type_size(std::uint16_t type)
{
    switch (type) {
    case kByte:
    case kAscii: return 1;
    case kShort: return 2;
    case kLong: return 4;
    case kRational: return 8;
    default: return 0;
    }
}

/// Bounds-checked view over a TIFF block.
class Tiff {
public:
    explicit Tiff(std::span<const std::uint8_t> data) : data_(data)
    {
        if (data_.size() < 8)
            return;
        if (data_[0] == 'I' && data_[1] == 'I')
            little_ = true;
        else if (data_[0] == 'M' && data_[1] == 'M')
            little_ = false;
        else
            return;
        valid_ = u16(2) == 42;
    }

    bool valid() const { return valid_; }
    std::uint32_t first_ifd() const { return u32(4); }

    bool in_range(std::size_t off, std::size_t len) const { return off <= data_.size() && len <= data_.size() - off; }

    std::uint16_t u16(std::size_t off) const
    {
        if (!in_range(off, 2))
            return 0;
        return little_ ? std::uint16_t(data_[off] | data_[off + 1] << 8) : std::uint16_t(data_[off] << 8 | data_[off + 1]);
    }

    std::uint32_t u32(std::size_t off) const
    {
        if (!in_range(off, 4))
            return 0;
        const std::uint32_t a = data_[off], b = data_[off + 1], c = data_[off + 2], d = data_[off + 3];
        return little_ ? (a | b << 8 | c << 16 | d << 24) : (a << 24 | b << 16 | c << 8 | d);
    }

    std::uint8_t u8(std::size_t off) const { return in_range(off, 1) ? data_[off] : 0; }

    struct Entry {
        std::uint16_t tag = 0;
        std::uint16_t type = 0;
        std::uint32_t count = 0;
        std::size_t value_offset = 0;  // where the value bytes live
    };

    std::vector<Entry> entries(std::uint32_t ifd) const
    {
        std::vector<Entry> out;
        if (!in_range(ifd, 2))
            return out;
        const std::uint16_t n = u16(ifd);
        for (std::uint16_t i = 0; i < n; ++i) {
            const std::size_t off = ifd + 2 + std::size_t(i) * 12;
            if (!in_range(off, 12))
                break;
            Entry e{u16(off), u16(off + 2), u32(off + 4), off + 8};
            const std::size_t bytes = type_size(e.type) * e.count;
            if (bytes > 4)
                e.value_offset = u32(off + 8);
            if (type_size(e.type) == 0 || !in_range(e.value_offset, bytes))
                continue;
            out.push_back(e);
        }
        return out;
    }

    std::optional<double> rational(const Entry& e, std::uint32_t index) const
    {
        if (e.type != kRational || index >= e.count)
            return std::nullopt;
        const std::uint32_t num = u32(e.value_offset + index * 8);
        const std::uint32_t den = u32(e.value_offset + index * 8 + 4);
        if (den == 0)
            return std::nullopt;
        return double(num) / double(den);
    }

    std::string ascii(const Entry& e) const
    {
        std::string s;
        for (std::uint32_t i = 0; i < e.count; ++i) {
            const char c = static_cast<char>(u8(e.value_offset + i));
            if (c == '\0')
                break;
            s.push_back(c);
        }
        return s;
    }

private:
    std::span<const std::uint8_t> data_;
    bool little_ = true;
    bool valid_ = false;
};

const Tiff::Entry* find(const std::vector<Tiff::Entry>& entries, std::uint16_t tag)
{
    for (const auto& e : entries)
        if (e.tag == tag)
            return &e;
    return nullptr;
}

std::optional<double> dms_degrees(const Tiff& tiff, const Tiff::Entry* e)
{
    if (!e)
        return std::nullopt;
    const auto d = tiff.rational(*e, 0), m = tiff.rational(*e, 1), s = tiff.rational(*e, 2);
    if (!d)
        return std::nullopt;
    return *d + m.value_or(0.0) / 60.0 + s.value_or(0.0) / 3600.0;
}

std::optional<GeoLocation> read_gps(const Tiff& tiff, std::uint32_t gps_ifd)
{
    const auto gps = tiff.entries(gps_ifd);
    auto lat = dms_degrees(tiff, find(gps, kGpsLatitude));
    auto lon = dms_degrees(tiff, find(gps, kGpsLongitude));
    if (!lat || !lon)
        return std::nullopt;
    if (const auto* ref = find(gps, kGpsLatitudeRef); ref && tiff.ascii(*ref) == "S")
        *lat = -*lat;
    if (const auto* ref = find(gps, kGpsLongitudeRef); ref && tiff.ascii(*ref) == "W")
        *lon = -*lon;
    GeoLocation loc{*lat, *lon, 0.0};
    if (const auto* alt = find(gps, kGpsAltitude)) {
        loc.altitude = tiff.rational(*alt, 0).value_or(0.0);
        if (const auto* aref = find(gps, kGpsAltitudeRef); aref && aref->type == kByte && tiff.u8(aref->value_offset) == 1)
            loc.altitude = -loc.altitude;
    }
    try {
        check_geo_location(loc);
    } catch (const Error&) {
        return std::nullopt;
    }
    return loc;
}

ExifInfo parse_tiff(std::span<const std::uint8_t> block)
{
    ExifInfo info;
    const Tiff tiff(block);
    if (!tiff.valid())
        return info;
    const auto ifd0 = tiff.entries(tiff.first_ifd());
    if (const auto* gps = find(ifd0, kTagGpsIfd); gps && gps->type == kLong)
        info.location = read_gps(tiff, tiff.u32(gps->value_offset));
    if (const auto* exif = find(ifd0, kTagExifIfd); exif && exif->type == kLong) {
        const auto sub = tiff.entries(tiff.u32(exif->value_offset));
        if (const auto* dto = find(sub, kTagDateTimeOriginal); dto && dto->type == kAscii)
            info.capture_time = tiff.ascii(*dto);
    }
    if (!info.capture_time)
        if (const auto* dt = find(ifd0, kTagDateTime); dt && dt->type == kAscii)
            info.capture_time = tiff.ascii(*dt);
    return info;
}

std::optional<std::span<const std::uint8_t>> jpeg_exif_block(std::span<const std::uint8_t> b)
{
    if (b.size() < 4 || b[0] != 0xFF || b[1] != 0xD8)
        return std::nullopt;
    std::size_t pos = 2;
    while (pos + 4 <= b.size()) {
        if (b[pos] != 0xFF)
            return std::nullopt;
        const std::uint8_t marker = b[pos + 1];
        if (marker == 0xD8 || (marker >= 0xD0 && marker <= 0xD7) || marker == 0x01) {
            pos += 2;
            continue;
        }
        if (marker == 0xDA || marker == 0xD9)
            return std::nullopt;  // scan data reached without an EXIF segment
        const std::size_t len = std::size_t(b[pos + 2]) << 8 | b[pos + 3];
        if (len < 2 || pos + 2 + len > b.size())
            return std::nullopt;
        if (marker == 0xE1 && len >= 8 && std::memcmp(&b[pos + 4], "Exif\0\0", 6) == 0)
            return b.subspan(pos + 10, len - 8);
        pos += 2 + len;
    }
    return std::nullopt;
}

std::optional<std::span<const std::uint8_t>> png_exif_block(std::span<const std::uint8_t> b)
{
    static constexpr std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    if (b.size() < 8 || std::memcmp(b.data(), sig, 8) != 0)
        return std::nullopt;
    std::size_t pos = 8;
    while (pos + 12 <= b.size()) {
        const std::size_t len = std::size_t(b[pos]) << 24 | std::size_t(b[pos + 1]) << 16 | std::size_t(b[pos + 2]) << 8 | b[pos + 3];
        if (len > b.size() - pos - 12)
            return std::nullopt;
        if (std::memcmp(&b[pos + 4], "eXIf", 4) == 0)
            return b.subspan(pos + 8, len);
        if (std::memcmp(&b[pos + 4], "IEND", 4) == 0)
            return std::nullopt;
        pos += 12 + len;
    }
    return std::nullopt;
}

}  // namespace

ExifInfo read_exif(std::span<const std::uint8_t> image_bytes)
{
    if (auto block = jpeg_exif_block(image_bytes))
        return parse_tiff(*block);
    if (auto block = png_exif_block(image_bytes))
        return parse_tiff(*block);
    return {};
}

std::optional<GeoLocation> extract_exif_location(std::span<const std::uint8_t> image_bytes)
{
    return read_exif(image_bytes).location;
}

}  // namespace forge
