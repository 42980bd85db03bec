#pragma once

#include <forge/providers/transport.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <set>

namespace forge {

enum class StoreMode { Live, Record, Replay };

template <>
struct EnumNames<StoreMode> {
    static constexpr std::array<std::string_view, 3> names{"live", "record", "replay"};
};

/// Content-addressed payload store: <root>/<digest>/payload next to
/// <root>/<digest>/meta.json holding kind, provider_tag and received_at.
class FixtureStore {
public:
    FixtureStore(std::filesystem::path root, StoreMode mode);

    const std::filesystem::path& root() const { return root_; }
    StoreMode mode() const { return mode_; }

    bool contains(const std::string& digest) const;
    /// Empty when no complete entry exists for `digest`.
    std::optional<ProviderResponse> load(const std::string& digest) const;
    /// Atomic per entry: readers never observe a half-written payload.
    void save(const ProviderResponse& response);

private:
    std::mutex& lock_for(const std::string& digest);

    std::filesystem::path root_;
    StoreMode mode_;
    std::mutex locks_guard_;
    std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

struct DispatchOptions {
    std::size_t max_in_flight = 4;
    int max_retries = 2;
    std::chrono::milliseconds initial_backoff{1000};
    std::function<void(std::chrono::milliseconds)> sleep;  // defaults to this_thread::sleep_for
    std::function<std::string()> clock;                    // ISO-8601 UTC; defaults to the system clock
};

std::string utc_timestamp();

/// Routes requests to the transport or the fixture store according to the
/// store mode. Safe for concurrent use.
class Dispatcher {
public:
    Dispatcher(FixtureStore& store, std::shared_ptr<Transport> transport, DispatchOptions options = {});

    /// Throws MissingFixture (replay), TransportError (live/record after
    /// retries) or MalformedPayload.
    ProviderResponse dispatch(const ProviderRequest& req);

    /// Digests of every request answered so far, sorted.
    std::vector<std::string> consumed_digests() const;
    std::size_t transport_calls() const;

    StoreMode mode() const { return store_.mode(); }

private:
    Bytes call_with_retry(const ProviderRequest& req);

    FixtureStore& store_;
    std::shared_ptr<Transport> transport_;
    DispatchOptions options_;
    std::counting_semaphore<> in_flight_;
    mutable std::mutex consumed_mutex_;
    std::set<std::string> consumed_;
    std::atomic<std::size_t> calls_{0};
};

/// dispatch() for callers that only replay.
ProviderResponse dispatch(const ProviderRequest& req, FixtureStore& store);

}  // namespace forge
