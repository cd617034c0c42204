#include "motionsimp/service.hpp"

#include <filesystem>
#include <iostream>

#include <httplib.h>

#include "motionsimp/errors.hpp"
#include "motionsimp/motion_io.hpp"
#include "motionsimp/serialize.hpp"

namespace motionsimp {

namespace {

HttpReply error_reply(int status, const std::string& message) {
    return {status, dump_json({{"error", message}})};
}

bool local_origin(const std::string& origin) {
    for (const char* host : {"http://localhost", "http://127.0.0.1", "https://localhost", "https://127.0.0.1"}) {
        const std::string h(host);
        if (origin == h || origin.rfind(h + ":", 0) == 0) return true;
    }
    return false;
}

}  // namespace

std::string profile_body(const MotionSequence& seq) {
    return dump_json(profile_to_json(compute_profile(seq), seq));
}

SessionStore::SessionStore(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) fail(ErrorKind::InvalidArgument, "session capacity must be >= 1");
}

std::string SessionStore::insert(MotionSequence seq) {
    auto session = std::make_shared<Session>(std::move(seq));
    std::lock_guard lock(mutex_);
    const std::string id = "s" + std::to_string(next_id_++);
    order_.push_front(id);
    items_.emplace(id, std::make_pair(std::move(session), order_.begin()));
    while (items_.size() > capacity_) {
        items_.erase(order_.back());
        order_.pop_back();
    }
    return id;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = items_.find(id);
    if (it == items_.end()) return nullptr;
    order_.splice(order_.begin(), order_, it->second.second);
    return it->second.first;
}

std::size_t SessionStore::size() const {
    std::lock_guard lock(mutex_);
    return items_.size();
}

Service::Service(ServiceOptions options) : options_(std::move(options)), store_(options_.capacity) {}

HttpReply Service::post_sequence(std::string_view body) {
    if (body.size() > options_.max_body) return error_reply(413, "request body too large");
    try {
        MotionSequence seq = parse_motion_json(body);
        return {201, dump_json({{"id", store_.insert(std::move(seq))}})};
    } catch (const MotionError& e) {
        return error_reply(400, e.what());
    }
}

HttpReply Service::get_profile(const std::string& id) {
    auto session = store_.find(id);
    if (!session) return error_reply(404, "unknown sequence id: " + id);
    std::lock_guard lock(session->mutex);
    if (!session->profile_body) session->profile_body = profile_body(session->seq);
    return {200, *session->profile_body};
}

HttpReply Service::post_simplify(const std::string& id, std::string_view body) {
    if (body.size() > options_.max_body) return error_reply(413, "request body too large");
    auto session = store_.find(id);
    if (!session) return error_reply(404, "unknown sequence id: " + id);

    SimplifyConfig config;
    try {
        const json doc = body.empty() ? json::object() : json::parse(body);
        config = config_from_json(doc);
    } catch (const json::exception& e) {
        return error_reply(400, std::string("malformed JSON: ") + e.what());
    } catch (const MotionError& e) {
        return error_reply(422, e.what());
    }

    SimplifyResult result = simplify(session->seq, config);
    std::string reply = dump_json(result_to_json(result, true));
    std::lock_guard lock(session->mutex);
    session->last_result = std::move(result);
    return {200, std::move(reply)};
}

HttpReply Service::healthz() const {
    return {200, dump_json({{"status", "ok"}, {"version", MOTIONSIMP_VERSION}})};
}

void Service::bind(httplib::Server& server) {
    server.set_payload_max_length(options_.max_body);

    const bool cors_any = options_.cors_any;
    server.set_post_routing_handler([cors_any](const httplib::Request& req, httplib::Response& res) {
        const std::string origin = req.get_header_value("Origin");
        if (origin.empty()) return;
        if (cors_any || local_origin(origin)) {
            res.set_header("Access-Control-Allow-Origin", cors_any ? "*" : origin);
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
        }
    });

    auto send = [](httplib::Response& res, const HttpReply& reply) {
        res.status = reply.status;
        res.set_content(reply.body, "application/json");
    };

    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server.Get("/healthz", [this, send](const httplib::Request&, httplib::Response& res) { send(res, healthz()); });
    server.Post("/sequences", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, post_sequence(req.body));
    });
    server.Get(R"(/sequences/([^/]+)/profile)", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, get_profile(req.matches[1]));
    });
    server.Post(R"(/sequences/([^/]+)/simplify)", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, post_simplify(req.matches[1], req.body));
    });
    server.set_exception_handler([send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            send(res, error_reply(500, e.what()));
        }
    });

    if (!options_.static_dir.empty() && std::filesystem::is_directory(options_.static_dir)) {
        server.set_mount_point("/", options_.static_dir);
    }
}

int serve(Service& service, const std::string& host, int port) {
    httplib::Server server;
    service.bind(server);
    std::cerr << "listening on " << host << ":" << port << "\n";
    if (!server.listen(host, port)) {
        std::cerr << "failed to bind " << host << ":" << port << "\n";
        return 2;
    }
    return 0;
}

}  // namespace motionsimp
