#include <forge/core/canonical_json.hpp>
#include <forge/core/error.hpp>
#include <forge/providers/dispatch.hpp>

#include <ctime>
#include <thread>

namespace forge {

namespace fs = std::filesystem;

FixtureStore::FixtureStore(fs::path root, StoreMode mode) : root_(std::move(root)), mode_(mode) {}

bool FixtureStore::contains(const std::string& digest) const
{
    std::error_code ec;
    return fs::is_regular_file(root_ / digest / "payload", ec) && fs::is_regular_file(root_ / digest / "meta.json", ec);
}

std::optional<ProviderResponse> FixtureStore::load(const std::string& digest) const
{
    if (root_.empty() || !contains(digest))
        return std::nullopt;
    const fs::path dir = root_ / digest;
    const Bytes meta_bytes = read_file(dir / "meta.json");
    const Json meta = parse_json(std::string_view(reinterpret_cast<const char*>(meta_bytes.data()), meta_bytes.size()));
    ProviderResponse r;
    r.kind = parse_enum<ProviderKind>(meta.at("kind").get<std::string>());
    r.digest = digest;
    r.payload = read_file(dir / "payload");
    r.received_at = meta.value("received_at", "");
    r.provider_tag = meta.value("provider_tag", "");
    return r;
}

std::mutex& FixtureStore::lock_for(const std::string& digest)
{
    std::lock_guard guard(locks_guard_);
    auto& slot = locks_[digest];
    if (!slot)
        slot = std::make_unique<std::mutex>();
    return *slot;
}

void FixtureStore::save(const ProviderResponse& response)
{
    std::lock_guard guard(lock_for(response.digest));
    const fs::path dir = root_ / response.digest;
    const fs::path staging = root_ / (response.digest + ".tmp");
    std::error_code ec;
    fs::remove_all(staging, ec);
    fs::create_directories(staging, ec);
    if (ec)
        throw Error(ErrorCode::IoError, staging.string() + ": " + ec.message());
    write_file(staging / "payload", response.payload);
    const std::string meta = canonical_dump(Json{{"kind", to_string(response.kind)},
                                                 {"provider_tag", response.provider_tag},
                                                 {"received_at", response.received_at}});
    write_file(staging / "meta.json", std::span(reinterpret_cast<const std::uint8_t*>(meta.data()), meta.size()));
    fs::remove_all(dir, ec);
    fs::rename(staging, dir, ec);
    if (ec)
        throw Error(ErrorCode::IoError, dir.string() + ": " + ec.message());
}

std::string utc_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Dispatcher::Dispatcher(FixtureStore& store, std::shared_ptr<Transport> transport, DispatchOptions options)
    : store_(store),
      transport_(std::move(transport)),
      options_(std::move(options)),
      in_flight_(static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, options_.max_in_flight)))
{
    if (!options_.sleep)
        options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    if (!options_.clock)
        options_.clock = utc_timestamp;
}

Bytes Dispatcher::call_with_retry(const ProviderRequest& req)
{
    if (!transport_)
        throw Error(ErrorCode::TransportError, "no transport configured");
    in_flight_.acquire();
    struct Release {
        std::counting_semaphore<>& s;
        ~Release() { s.release(); }
    } release{in_flight_};

    auto backoff = options_.initial_backoff;
    for (int attempt = 0;; ++attempt) {
        try {
            ++calls_;
            return transport_->send(req);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TransportError || attempt >= options_.max_retries)
                throw;
        }
        options_.sleep(backoff);
        backoff *= 2;
    }
}

ProviderResponse Dispatcher::dispatch(const ProviderRequest& req)
{
    if (req.prompt.empty())
        throw Error(ErrorCode::InvalidArgument, "provider request has an empty prompt");
    const std::string digest = digest_request(req);

    ProviderResponse response;
    if (store_.mode() == StoreMode::Replay) {
        auto stored = store_.load(digest);
        if (!stored)
            throw Error(ErrorCode::MissingFixture, digest);
        if (stored->kind != req.kind)
            throw Error(ErrorCode::MalformedPayload, "fixture " + digest + " holds a " +
                                                         std::string(to_string(stored->kind)) + " payload");
        response = std::move(*stored);
    } else {
        response.kind = req.kind;
        response.digest = digest;
        response.payload = call_with_retry(req);
        response.received_at = options_.clock();
        response.provider_tag = transport_->provider_tag(req.kind);
    }
    check_payload(req.kind, response.payload);
    if (store_.mode() == StoreMode::Record)
        store_.save(response);
    {
        std::lock_guard guard(consumed_mutex_);
        consumed_.insert(digest);
    }
    return response;
}

std::vector<std::string> Dispatcher::consumed_digests() const
{
    std::lock_guard guard(consumed_mutex_);
    return {consumed_.begin(), consumed_.end()};
}

std::size_t Dispatcher::transport_calls() const { return calls_.load(); }

ProviderResponse dispatch(const ProviderRequest& req, FixtureStore& store)
{
    Dispatcher d(store, std::make_shared<FailingTransport>());
    return d.dispatch(req);
}

}  // namespace forge
