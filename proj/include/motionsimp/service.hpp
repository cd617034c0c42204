#pragma once

#include <cstddef>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "motionsimp/complexity.hpp"
#include "motionsimp/pipeline.hpp"

namespace httplib {
class Server;
}

namespace motionsimp {

inline constexpr int kDefaultPort = 7340;
inline constexpr std::size_t kMaxRequestBytes = 64u << 20;

struct HttpReply {
    int status = 200;
    std::string body;
};

/// One uploaded sequence with its lazily computed profile and last result.
struct Session {
    explicit Session(MotionSequence s) : seq(std::move(s)) {}

    const MotionSequence seq;
    std::mutex mutex;
    std::optional<std::string> profile_body;
    std::optional<SimplifyResult> last_result;
};

/// Bounded id -> session map with least-recently-used eviction.
class SessionStore {
public:
    explicit SessionStore(std::size_t capacity);

    std::string insert(MotionSequence seq);
    std::shared_ptr<Session> find(const std::string& id);
    std::size_t size() const;
    std::size_t capacity() const { return capacity_; }

private:
    mutable std::mutex mutex_;
    std::size_t capacity_;
    std::uint64_t next_id_ = 1;
    std::list<std::string> order_;  // most recent first
    std::unordered_map<std::string, std::pair<std::shared_ptr<Session>, std::list<std::string>::iterator>> items_;
};

struct ServiceOptions {
    std::size_t capacity = 64;
    std::size_t max_body = kMaxRequestBytes;
    std::string static_dir;   // mounted at / when non-empty
    bool cors_any = false;    // otherwise only localhost origins are echoed
};

/// Request handlers, callable directly or through bind().
class Service {
public:
    explicit Service(ServiceOptions options = {});

    HttpReply post_sequence(std::string_view body);
    HttpReply get_profile(const std::string& id);
    HttpReply post_simplify(const std::string& id, std::string_view body);
    HttpReply healthz() const;

    SessionStore& store() { return store_; }
    const ServiceOptions& options() const { return options_; }

    void bind(httplib::Server& server);

private:
    ServiceOptions options_;
    SessionStore store_;
};

/// Blocks serving on host:port until the process is stopped.
int serve(Service& service, const std::string& host, int port);

/// Body of GET /sequences/{id}/profile for a sequence.
std::string profile_body(const MotionSequence& seq);

}  // namespace motionsimp
