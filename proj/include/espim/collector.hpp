#pragma once

// HTTP collector: accepts session uploads, validates them and stores each as
// <session_id>.json in the output directory.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace espim::collector {

inline constexpr const char* kTokenEnv = "ESPIM_COLLECTOR_TOKEN";
inline constexpr std::size_t kDefaultMaxBodyBytes = 16u << 20;

struct Config {
    std::filesystem::path out_dir;
    std::string token; // empty: no authentication
    std::size_t max_body_bytes = kDefaultMaxBodyBytes;
};

struct Response {
    int status = 200;
    std::string body; // JSON
};

/// Request handling without the transport, so it can be driven directly.
/// `authorization` is the raw Authorization header value.
Response handle_upload(const Config& config, std::string_view body, std::string_view authorization);
Response handle_health();

/// "host:port" -> (host, port). Port 0 asks for an ephemeral port.
std::pair<std::string, int> parse_bind(std::string_view text);

class Server {
public:
    explicit Server(Config config);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds and returns the bound port. Throws Error on failure.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    void run();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace espim::collector
