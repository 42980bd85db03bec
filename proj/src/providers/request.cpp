#include <forge/core/canonical_json.hpp>
#include <forge/core/error.hpp>
#include <forge/providers/request.hpp>

#include <openssl/evp.h>

#include <cstring>

namespace forge {

PayloadType payload_type_for(ProviderKind kind)
{
    switch (kind) {
    case ProviderKind::SceneAnalysis:
    case ProviderKind::LocationEstimate: return PayloadType::Json;
    case ProviderKind::Segmentation:
    case ProviderKind::TextureGeneration:
    case ProviderKind::AnnotationPainting: return PayloadType::Image;
    case ProviderKind::AssetGeneration: return PayloadType::Mesh;
    }
    return PayloadType::Json;
}

std::string sha256_hex(std::span<const std::uint8_t> bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::InvalidArgument, "SHA-256 computation failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xF]);
    }
    return out;
}

std::string sha256_hex(std::string_view text)
{
    return sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string base64_encode(std::span<const std::uint8_t> bytes)
{
    std::string out(4 * ((bytes.size() + 2) / 3), '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(), static_cast<int>(bytes.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::string media_type_of(std::span<const std::uint8_t> b)
{
    if (b.size() >= 8 && b[0] == 0x89 && b[1] == 'P' && b[2] == 'N' && b[3] == 'G')
        return "image/png";
    if (b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF)
        return "image/jpeg";
    if (b.size() >= 4 && std::memcmp(b.data(), "glTF", 4) == 0)
        return "model/gltf-binary";
    return "application/octet-stream";
}

Attachment Attachment::from_bytes(Bytes bytes, std::string media_type)
{
    Attachment a;
    a.digest = sha256_hex(bytes);
    a.media_type = std::move(media_type);
    a.bytes = std::make_shared<const Bytes>(std::move(bytes));
    return a;
}

Attachment Attachment::from_raster(const RgbImage& image)
{
    Attachment a;
    a.digest = sha256_hex(raw_ppm_bytes(image));
    a.media_type = "image/png";
    a.bytes = std::make_shared<const Bytes>(encode_png(image));
    return a;
}

std::string canonical_request(const ProviderRequest& req)
{
    Json inputs = Json::array();
    for (const auto& a : req.inputs)
        inputs.push_back(a.digest);
    Json params = Json::object();
    for (const auto& [k, v] : req.params)
        params[k] = v;
    return canonical_dump(Json{
        {"inputs", inputs},
        {"kind", to_string(req.kind)},
        {"params", params},
        {"prompt", req.prompt},
    });
}

std::string digest_request(const ProviderRequest& req)
{
    return sha256_hex(canonical_request(req));
}

void check_payload(ProviderKind kind, std::span<const std::uint8_t> payload)
{
    const std::string what(to_string(kind));
    if (payload.empty())
        throw Error(ErrorCode::MalformedPayload, what + " payload is empty");
    switch (payload_type_for(kind)) {
    case PayloadType::Json:
        if (!Json::accept(payload.begin(), payload.end()))
            throw Error(ErrorCode::MalformedPayload, what + " payload is not valid JSON");
        break;
    case PayloadType::Image:
        if (decode_image(payload).width() == 0)
            throw Error(ErrorCode::MalformedPayload, what + " payload is not a decodable image");
        break;
    case PayloadType::Mesh: {
        if (payload.size() < 12 || std::memcmp(payload.data(), "glTF", 4) != 0)
            throw Error(ErrorCode::MalformedPayload, what + " payload is not a binary glTF container");
        const std::uint32_t version = payload[4] | payload[5] << 8 | payload[6] << 16 | std::uint32_t(payload[7]) << 24;
        if (version != 2)
            throw Error(ErrorCode::MalformedPayload, what + " payload is glTF version " + std::to_string(version));
        break;
    }
    }
}

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& slots)
{
    std::string out;
    out.reserve(tmpl.size());
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
        const char c = tmpl[i];
        if (c == '{') {
            if (i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
                out.push_back('{');
                ++i;
                continue;
            }
            const auto close = tmpl.find('}', i);
            if (close == std::string_view::npos)
                throw Error(ErrorCode::InvalidArgument, "unmatched '{' in prompt template");
            const std::string name(tmpl.substr(i + 1, close - i - 1));
            const auto it = slots.find(name);
            if (it == slots.end())
                throw Error(ErrorCode::InvalidArgument, "prompt slot {" + name + "} has no value");
            out += it->second;
            i = close;
        } else if (c == '}') {
            if (i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
                out.push_back('}');
                ++i;
                continue;
            }
            throw Error(ErrorCode::InvalidArgument, "unmatched '}' in prompt template");
        } else {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace forge
