#include "facttrack/model_client.hpp"

#include "facttrack/hash.hpp"

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <semaphore>
#include <thread>

namespace facttrack {

using Json = nlohmann::json;

namespace {

// One global in-flight gate; the limit comes from the first client built.
std::counting_semaphore<64>& in_flight_gate(int limit) {
    static std::counting_semaphore<64> gate(std::clamp(limit, 1, 64));
    return gate;
}

}  // namespace

ModelClient::ModelClient(ClientConfig cfg, Transport transport)
    : cfg_(std::move(cfg)), transport_(std::move(transport)) {}

std::string ModelClient::cache_key(const std::string& model, const std::string& prompt,
                                   double temperature) {
    Json key = {{"model", model}, {"prompt", prompt}, {"temperature", temperature}};
    return sha256_hex(key.dump());
}

std::string ModelClient::http_complete(const std::string& prompt) {
    const char* key = nullptr;
    if (!cfg_.api_key_env.empty()) {
        key = std::getenv(cfg_.api_key_env.c_str());
        if (!key)
            throw ConfigError("api key environment variable not set: " + cfg_.api_key_env);
    }
    if (cfg_.endpoint.empty()) throw ConfigError("model endpoint not configured");

    Json body = {
        {"model", cfg_.model},
        {"temperature", cfg_.temperature},
        {"messages", Json::array({Json{{"role", "user"}, {"content", prompt}}})},
    };

    httplib::Client http(cfg_.endpoint);
    http.set_connection_timeout(30);
    http.set_read_timeout(120);
    httplib::Headers headers;
    if (key) headers.emplace("Authorization", std::string("Bearer ") + key);

    auto res = http.Post(cfg_.completion_path, headers, body.dump(), "application/json");
    if (!res) throw TransportError("no response from " + cfg_.endpoint);
    if (res->status == 401 || res->status == 403)
        throw AuthError("authentication failed (" + std::to_string(res->status) + ")");
    if (res->status == 429) throw RateLimitError("rate limited");
    if (res->status >= 500)
        throw TransportError("server error " + std::to_string(res->status));
    if (res->status != 200)
        throw ProtocolError("unexpected status " + std::to_string(res->status) + ": " +
                            res->body.substr(0, 200));

    Json parsed;
    try {
        parsed = Json::parse(res->body);
    } catch (const Json::exception& e) {
        throw ProtocolError(std::string("unparseable response body: ") +
                            res->body.substr(0, 200));
    }
    auto ptr = Json::json_pointer(cfg_.response_text_pointer);
    if (!parsed.contains(ptr) || !parsed[ptr].is_string())
        throw ProtocolError("completion text missing at " + cfg_.response_text_pointer +
                            " in: " + res->body.substr(0, 200));
    return parsed[ptr].get<std::string>();
}

std::string ModelClient::complete(const std::string& prompt) {
    in_flight_gate(cfg_.max_in_flight).acquire();
    struct Release {
        std::counting_semaphore<64>& g;
        ~Release() { g.release(); }
    } release{in_flight_gate(cfg_.max_in_flight)};

    int attempts = std::max(1, cfg_.max_retries);
    std::chrono::milliseconds backoff(200);
    for (int i = 0;; ++i) {
        try {
            ++network_calls_;
            if (transport_) return transport_(prompt);
            return http_complete(prompt);
        } catch (const AuthError&) {
            throw;
        } catch (const ConfigError&) {
            throw;
        } catch (const ProtocolError&) {
            throw;
        } catch (const ClientError&) {
            // transient: retry with backoff
            if (i + 1 >= attempts) throw;
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
    }
}

std::string ModelClient::cached_complete(const std::string& prompt) {
    if (cfg_.cache_dir.empty()) return complete(prompt);

    const std::string key = cache_key(cfg_.model, prompt, cfg_.temperature);
    const auto path = cfg_.cache_dir / (key + ".json");

    {
        std::ifstream in(path);
        if (in) {
            try {
                Json entry = Json::parse(in);
                if (entry.at("key") == key) return entry.at("completion").get<std::string>();
            } catch (const Json::exception&) {
                // corrupted entry: fall through and overwrite
            }
        }
    }

    std::string text = complete(prompt);

    Json entry = {
        {"key", key},
        {"model", cfg_.model},
        {"temperature", cfg_.temperature},
        {"completion", text},
        {"created_at",
         std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
             .count()},
    };

    std::lock_guard lock(cache_mutex_);
    std::filesystem::create_directories(cfg_.cache_dir);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << entry.dump(2);
    }
    std::filesystem::rename(tmp, path);
    return text;
}

}  // namespace facttrack
