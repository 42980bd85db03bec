#include <forge/core/canonical_json.hpp>
#include <forge/core/error.hpp>
#include <forge/providers/transport.hpp>

// after Eigen: resolv.h defines a _res macro
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cstdlib>

namespace forge {

Bytes FailingTransport::send(const ProviderRequest& req)
{
    ++attempts_;
    throw Error(ErrorCode::TransportError, "network disabled; refused " + std::string(to_string(req.kind)) + " request");
}

std::string default_api_key_env(ProviderKind kind)
{
    switch (kind) {
    case ProviderKind::SceneAnalysis:
    case ProviderKind::LocationEstimate: return "MD_LLM_API_KEY";
    case ProviderKind::Segmentation: return "MD_SEG_API_KEY";
    case ProviderKind::AssetGeneration: return "MD_ASSET_API_KEY";
    case ProviderKind::TextureGeneration:
    case ProviderKind::AnnotationPainting: return "MD_IMAGE_API_KEY";
    }
    return "MD_LLM_API_KEY";
}

EndpointTable endpoints_from_json(const Json& doc)
{
    EndpointTable table;
    if (doc.is_null())
        return table;
    if (!doc.is_object())
        throw Error(ErrorCode::InvalidArgument, "endpoints must be an object keyed by provider kind");
    for (const auto& [key, value] : doc.items()) {
        const auto kind = parse_enum<ProviderKind>(key);
        Endpoint ep;
        if (value.is_string()) {
            ep.url = value.get<std::string>();
        } else {
            ep.url = value.at("url").get<std::string>();
            ep.api_key_env = value.value("api_key_env", "");
            ep.provider_tag = value.value("provider_tag", "");
        }
        if (ep.api_key_env.empty())
            ep.api_key_env = default_api_key_env(kind);
        if (ep.provider_tag.empty())
            ep.provider_tag = ep.url;
        table[kind] = ep;
    }
    return table;
}

HttpTransport::HttpTransport(EndpointTable endpoints, int timeout_seconds)
    : endpoints_(std::move(endpoints)), timeout_seconds_(timeout_seconds)
{
}

const Endpoint& HttpTransport::endpoint(ProviderKind kind) const
{
    const auto it = endpoints_.find(kind);
    if (it == endpoints_.end())
        throw Error(ErrorCode::TransportError, "no endpoint configured for " + std::string(to_string(kind)));
    return it->second;
}

std::string HttpTransport::provider_tag(ProviderKind kind) const
{
    const auto it = endpoints_.find(kind);
    return it == endpoints_.end() ? std::string("unconfigured") : it->second.provider_tag;
}

std::string HttpTransport::wire_body(const ProviderRequest& req)
{
    Json images = Json::array();
    for (const auto& a : req.inputs)
        images.push_back({{"media_type", a.media_type}, {"data", base64_encode(*a.bytes)}});
    Json params = Json::object();
    for (const auto& [k, v] : req.params)
        params[k] = v;
    return Json{{"kind", to_string(req.kind)}, {"prompt", req.prompt}, {"params", params}, {"images", images}}.dump();
}

Bytes HttpTransport::send(const ProviderRequest& req)
{
    const Endpoint& ep = endpoint(req.kind);
    const auto scheme_end = ep.url.find("://");
    if (scheme_end == std::string::npos)
        throw Error(ErrorCode::TransportError, "endpoint URL lacks a scheme: " + ep.url);
    const auto path_start = ep.url.find('/', scheme_end + 3);
    const std::string origin = ep.url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : ep.url.substr(path_start);

    const char* key = std::getenv(ep.api_key_env.c_str());
    if (!key || !*key)
        throw Error(ErrorCode::TransportError, ep.api_key_env + " is not set");

    httplib::Client client(origin);
    client.set_connection_timeout(timeout_seconds_);
    client.set_read_timeout(timeout_seconds_);
    client.set_write_timeout(timeout_seconds_);
    const httplib::Headers headers{{"Authorization", std::string("Bearer ") + key}};
    const auto res = client.Post(path, headers, wire_body(req), "application/json");
    if (!res)
        throw Error(ErrorCode::TransportError, origin + ": " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
        throw Error(ErrorCode::TransportError, origin + " answered HTTP " + std::to_string(res->status));
    return Bytes(res->body.begin(), res->body.end());
}

}  // namespace forge
