#pragma once

#include <forge/annotate/raster.hpp>
#include <forge/core/enum_names.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace forge {

enum class ProviderKind { SceneAnalysis, LocationEstimate, Segmentation, AssetGeneration, TextureGeneration, AnnotationPainting };

template <>
struct EnumNames<ProviderKind> {
    static constexpr std::array<std::string_view, 6> names{"scene_analysis",     "location_estimate",
                                                           "segmentation",       "asset_generation",
                                                           "texture_generation", "annotation_painting"};
};

enum class PayloadType { Json, Image, Mesh };

PayloadType payload_type_for(ProviderKind kind);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_hex(std::string_view text);

std::string base64_encode(std::span<const std::uint8_t> bytes);

/// An image sent along with a request. The digest identifies the content:
/// file bytes for images read from disk or returned by a provider, the
/// binary PPM form for rasters the pipeline rendered itself.
struct Attachment {
    std::string digest;
    std::string media_type;
    std::shared_ptr<const Bytes> bytes;  // what goes over the wire

    static Attachment from_bytes(Bytes bytes, std::string media_type);
    static Attachment from_raster(const RgbImage& image);
};

/// Sniffs "image/png", "image/jpeg" or "application/octet-stream".
std::string media_type_of(std::span<const std::uint8_t> bytes);

struct ProviderRequest {
    ProviderKind kind = ProviderKind::SceneAnalysis;
    std::string prompt;
    std::vector<Attachment> inputs;
    std::map<std::string, std::string> params;
};

/// Canonical JSON of (inputs digests, kind, params, prompt).
std::string canonical_request(const ProviderRequest& req);

/// SHA-256 of canonical_request(req).
std::string digest_request(const ProviderRequest& req);

struct ProviderResponse {
    ProviderKind kind = ProviderKind::SceneAnalysis;
    std::string digest;
    Bytes payload;
    std::string received_at;   // ISO-8601 UTC
    std::string provider_tag;
};

/// Throws MalformedPayload unless `payload` has the type `kind` produces:
/// parseable JSON, a decodable raster, or a binary glTF container.
void check_payload(ProviderKind kind, std::span<const std::uint8_t> payload);

/// Substitutes {name} slots; {{ and }} become literal braces. Throws
/// InvalidArgument for a slot with no value or an unmatched brace.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& slots);

}  // namespace forge
