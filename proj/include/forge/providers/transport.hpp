#pragma once

#include <forge/providers/request.hpp>

#include <atomic>
#include <map>
#include <string>

namespace forge {

/// Performs one remote call. Implementations throw TransportError on any
/// network or service failure and are called concurrently.
class Transport {
public:
    virtual ~Transport() = default;
    virtual Bytes send(const ProviderRequest& req) = 0;
    virtual std::string provider_tag(ProviderKind kind) const = 0;
};

/// Refuses every call. Used to prove a run touches no network.
class FailingTransport final : public Transport {
public:
    Bytes send(const ProviderRequest& req) override;
    std::string provider_tag(ProviderKind) const override { return "offline"; }
    std::size_t attempts() const { return attempts_.load(); }

private:
    std::atomic<std::size_t> attempts_{0};
};

struct Endpoint {
    std::string url;           // scheme://host[:port]/path
    std::string api_key_env;   // environment variable holding the bearer token
    std::string provider_tag;
};

/// Endpoint per kind; the API key variable defaults by service family.
using EndpointTable = std::map<ProviderKind, Endpoint>;

std::string default_api_key_env(ProviderKind kind);

/// JSON-over-HTTPS adapter: POSTs {"kind","prompt","params","images":[{"media_type","data"}]}
/// with base64 image data and a bearer token, and returns the response
/// body as the payload.
class HttpTransport final : public Transport {
public:
    explicit HttpTransport(EndpointTable endpoints, int timeout_seconds = 300);
    Bytes send(const ProviderRequest& req) override;
    std::string provider_tag(ProviderKind kind) const override;

    /// Request body as sent on the wire.
    static std::string wire_body(const ProviderRequest& req);

private:
    const Endpoint& endpoint(ProviderKind kind) const;
    EndpointTable endpoints_;
    int timeout_seconds_;
};

EndpointTable endpoints_from_json(const Json& doc);

}  // namespace forge
