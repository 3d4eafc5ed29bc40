#include "espim/collector.hpp"

#include <charconv>

#include "httplib.h"
#include "json.hpp"

#include "espim/error.hpp"
#include "espim/io.hpp"
#include "espim/session.hpp"

namespace espim::collector {

using nlohmann::json;

namespace {

Response error_response(int status, std::string message)
{
    return {status, json{{"error", std::move(message)}}.dump() + "\n"};
}

// Compares without an early exit so timing does not leak the prefix length.
bool same_token(std::string_view a, std::string_view b) noexcept
{
    if (a.size() != b.size())
        return false;
    unsigned char diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        diff |= static_cast<unsigned char>(a[i] ^ b[i]);
    return diff == 0;
}

bool authorized(const Config& config, std::string_view header)
{
    if (config.token.empty())
        return true;
    constexpr std::string_view kScheme = "Bearer ";
    if (header.substr(0, kScheme.size()) != kScheme)
        return false;
    return same_token(header.substr(kScheme.size()), config.token);
}

} // namespace

Response handle_health()
{
    return {200, json{{"status", "ok"}}.dump() + "\n"};
}

Response handle_upload(const Config& config, std::string_view body, std::string_view authorization)
{
    if (!authorized(config, authorization))
        return error_response(401, "missing or invalid bearer token");
    if (body.size() > config.max_body_bytes)
        return error_response(413, "payload exceeds " + std::to_string(config.max_body_bytes) + " bytes");

    SessionLog log;
    try {
        log = parse_session(body);
    } catch (const SessionError& e) {
        json v = json::array();
        for (const auto& x : e.violations())
            v.push_back(json{{"path", x.path}, {"message", x.message}});
        return {422, json{{"error", "invalid session"}, {"violations", std::move(v)}}.dump() + "\n"};
    }

    const auto path = config.out_dir / (log.session_id + ".json");
    try {
        if (!io::create_file_atomic(path, serialize_session(log)))
            return error_response(409, "session " + log.session_id + " already exists");
    } catch (const io::IoError& e) {
        return error_response(500, e.what());
    }
    return {201, json{{"id", log.session_id}}.dump() + "\n"};
}

std::pair<std::string, int> parse_bind(std::string_view text)
{
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0)
        throw DomainError("bind", "expected host:port, got '" + std::string(text) + "'");
    std::string host(text.substr(0, colon));
    if (host.size() >= 2 && host.front() == '[' && host.back() == ']')
        host = host.substr(1, host.size() - 2);
    const auto port_text = text.substr(colon + 1);
    int port = -1;
    auto [p, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc() || p != port_text.data() + port_text.size() || port < 0 || port > 65535)
        throw DomainError("bind", "invalid port in '" + std::string(text) + "'");
    return {host, port};
}

struct Server::Impl {
    Config config;
    httplib::Server http;
};

Server::Server(Config config) : impl_(std::make_unique<Impl>())
{
    impl_->config = std::move(config);
    std::error_code ec;
    std::filesystem::create_directories(impl_->config.out_dir, ec);
    if (ec)
        throw io::IoError("cannot create " + impl_->config.out_dir.string() + ": " + ec.message());

    auto& http = impl_->http;
    // Oversized bodies are rejected by the transport before they are read.
    http.set_payload_max_length(impl_->config.max_body_bytes);
    const Config* cfg = &impl_->config;
    const auto reply = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    http.Get("/v1/health", [reply](const httplib::Request&, httplib::Response& res) { reply(res, handle_health()); });
    http.Post("/v1/sessions", [cfg, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_upload(*cfg, req.body, req.get_header_value("Authorization")));
    });
    http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            const char* msg = res.status == 413 ? "payload too large" : res.status == 404 ? "not found" : "error";
            res.set_content(json{{"error", msg}}.dump() + "\n", "application/json");
        }
    });
}

Server::~Server()
{
    stop();
}

int Server::bind(const std::string& host, int port)
{
    const int bound = port == 0 ? impl_->http.bind_to_any_port(host) : (impl_->http.bind_to_port(host, port) ? port : -1);
    if (bound < 0)
        throw io::IoError("cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void Server::run()
{
    impl_->http.listen_after_bind();
}

void Server::stop()
{
    impl_->http.stop();
}

void Server::wait_until_ready() const
{
    impl_->http.wait_until_ready();
}

} // namespace espim::collector
