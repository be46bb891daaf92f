#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>

namespace facttrack {

class ClientError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class ConfigError : public ClientError {
    using ClientError::ClientError;
};
class AuthError : public ClientError {
    using ClientError::ClientError;
};
class RateLimitError : public ClientError {
    using ClientError::ClientError;
};
class TransportError : public ClientError {
    using ClientError::ClientError;
};
class ProtocolError : public ClientError {
    using ClientError::ClientError;
};

struct ClientConfig {
    std::string endpoint;                       // e.g. https://api.example.com
    std::string model = "gpt-4o-mini";
    double temperature = 0.0;                   // deterministic by default
    int max_in_flight = 4;
    int max_retries = 3;
    std::string api_key_env = "FACTTRACK_API_KEY";
    std::filesystem::path cache_dir;            // empty disables caching

    // Request/response field mapping so other chat-completion providers fit.
    std::string completion_path = "/v1/chat/completions";
    std::string response_text_pointer = "/choices/0/message/content";
};

// Chat-completion client with a content-addressed on-disk cache. Cache keys
// hash (model, prompt, temperature); a warm cache answers without any
// network I/O.
class ModelClient {
public:
    // Test seam: replaces the HTTP layer. Takes the prompt, returns the raw
    // completion text.
    using Transport = std::function<std::string(const std::string& prompt)>;

    explicit ModelClient(ClientConfig cfg, Transport transport = nullptr);

    // Network path only (no cache). Retries transient failures with
    // exponential backoff.
    std::string complete(const std::string& prompt);

    // Cache lookup first; on miss, complete() then an atomic cache write.
    std::string cached_complete(const std::string& prompt);

    const ClientConfig& config() const { return cfg_; }
    std::uint64_t network_calls() const { return network_calls_.load(); }

    static std::string cache_key(const std::string& model, const std::string& prompt,
                                 double temperature);

private:
    std::string http_complete(const std::string& prompt);

    ClientConfig cfg_;
    Transport transport_;
    std::atomic<std::uint64_t> network_calls_{0};
    std::mutex cache_mutex_;
};

}  // namespace facttrack
