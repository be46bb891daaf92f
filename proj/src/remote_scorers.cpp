#include "facttrack/remote_scorers.hpp"

#include "facttrack/model_client.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace facttrack {

using Json = nlohmann::json;

namespace {

struct UrlParts {
    std::string base;  // scheme://host[:port]
    std::string path;
};

UrlParts split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw std::invalid_argument("bad endpoint URL: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

Json post_json(const std::string& url, const Json& body, int max_retries) {
    UrlParts parts = split_url(url);
    std::chrono::milliseconds backoff(100);
    for (int i = 0;; ++i) {
        httplib::Client http(parts.base);
        http.set_read_timeout(60);
        auto res = http.Post(parts.path, body.dump(), "application/json");
        if (res && res->status == 200) {
            try {
                return Json::parse(res->body);
            } catch (const Json::exception&) {
                throw ProtocolError("unparseable scorer response: " +
                                    res->body.substr(0, 200));
            }
        }
        if (res && res->status != 200 && res->status < 500)
            throw ProtocolError("scorer returned status " + std::to_string(res->status) +
                                ": " + res->body.substr(0, 200));
        if (i + 1 >= std::max(1, max_retries))
            throw TransportError("scorer unreachable at " + url);
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
    }
}

class NliServiceScorer final : public FactScorer {
public:
    explicit NliServiceScorer(NliScorerConfig cfg) : cfg_(std::move(cfg)) {}

    double similarity(const std::string& a, const std::string& b) override {
        return similarity_batch({{a, b}})[0];
    }

    double contradiction(const std::string& a, const std::string& b) override {
        return contradiction_batch({{a, b}})[0];
    }

    std::vector<double> similarity_batch(const std::vector<TextPair>& pairs) override {
        std::vector<double> out;
        out.reserve(pairs.size());
        for (const auto& [a, b] : pairs) {
            auto va = embed(a);
            auto vb = embed(b);
            out.push_back(cosine_score(va, vb));
        }
        return out;
    }

    std::vector<double> contradiction_batch(const std::vector<TextPair>& pairs) override {
        if (pairs.empty()) return {};
        Json req = Json::object();
        req["pairs"] = Json::array();
        for (const auto& [a, b] : pairs)
            req["pairs"].push_back({{"premise", a}, {"hypothesis", b}});
        Json res = post_json(cfg_.score_endpoint, req, cfg_.max_retries);
        if (!res.contains("contradiction") || !res["contradiction"].is_array() ||
            res["contradiction"].size() != pairs.size())
            throw ProtocolError("bad score response shape: " + res.dump().substr(0, 200));
        std::vector<double> out;
        for (const auto& v : res["contradiction"]) out.push_back(v.get<double>());
        return out;
    }

    std::string id() const override { return "nli"; }

private:
    std::vector<double> embed(const std::string& text) {
        {
            std::lock_guard lock(mutex_);
            auto it = embed_cache_.find(text);
            if (it != embed_cache_.end()) return it->second;
        }
        Json req = {{"texts", Json::array({text})}};
        Json res = post_json(cfg_.embed_endpoint, req, cfg_.max_retries);
        if (!res.contains("embeddings") || !res["embeddings"].is_array() ||
            res["embeddings"].size() != 1)
            throw ProtocolError("bad embed response shape: " + res.dump().substr(0, 200));
        std::vector<double> v = res["embeddings"][0].get<std::vector<double>>();
        std::lock_guard lock(mutex_);
        embed_cache_.emplace(text, v);
        return v;
    }

    double cosine_score(const std::vector<double>& a, const std::vector<double>& b) const {
        if (a.size() != b.size() || a.empty())
            throw ProtocolError("embedding length mismatch");
        double dot = 0, na = 0, nb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            dot += a[i] * b[i];
            na += a[i] * a[i];
            nb += b[i] * b[i];
        }
        if (na == 0 || nb == 0) return 0.0;
        double cos = dot / (std::sqrt(na) * std::sqrt(nb));
        cos = std::clamp(cos, -1.0, 1.0);
        return cfg_.map_cosine ? (cos + 1.0) / 2.0 : cos;
    }

    NliScorerConfig cfg_;
    std::mutex mutex_;
    std::map<std::string, std::vector<double>> embed_cache_;
};

std::string trim_copy(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

class FewshotChatScorer final : public FactScorer {
public:
    FewshotChatScorer(std::shared_ptr<ModelClient> client, std::string tmpl,
                      int max_retries)
        : client_(std::move(client)),
          template_(std::move(tmpl)),
          max_retries_(max_retries) {}

    double similarity(const std::string&, const std::string&) override { return 1.0; }

    double contradiction(const std::string& a, const std::string& b) override {
        std::string prompt = template_;
        replace(prompt, "{fact1}", a);
        replace(prompt, "{fact2}", b);
        std::string last;
        for (int attempt = 0; attempt < std::max(1, max_retries_); ++attempt) {
            std::string p = attempt == 0
                                ? prompt
                                : prompt + "\n(retry " + std::to_string(attempt) + ")";
            last = client_->cached_complete(p);
            std::string ans = trim_copy(last);
            if (ans.rfind("Answer:", 0) == 0) ans = trim_copy(ans.substr(7));
            if (ans.rfind("Yes", 0) == 0 || ans.rfind("yes", 0) == 0) return 1.0;
            if (ans.rfind("No", 0) == 0 || ans.rfind("no", 0) == 0) return 0.0;
        }
        throw ScoringError("unparseable yes/no answer after retries", last);
    }

    std::string id() const override { return "fewshot"; }

private:
    static void replace(std::string& s, const std::string& slot, const std::string& v) {
        auto pos = s.find(slot);
        if (pos != std::string::npos) s.replace(pos, slot.size(), v);
    }

    std::shared_ptr<ModelClient> client_;
    std::string template_;
    int max_retries_;
};

}  // namespace

const char* const kFewshotContradictionPrompt =
    "Do the following statements contradict each other? Answer \"Yes\" or \"No\".\n\n"
    "Fact 1: John's lifestyle is strictly aligned with the teachings of his faith.\n"
    "Fact 2: John holds certain religious beliefs before his encounter with the "
    "entities.\n"
    "Answer: No\n\n"
    "Fact 1: The society in Europe was functioning normally without any widespread "
    "fear or despair.\n"
    "Fact 2: The populace of Europe is living in fear and despair due to the Black "
    "Death.\n"
    "Answer: Yes\n\n"
    "Fact 1: Emily was living a normal life without any chaos or fear related to "
    "supernatural experiences.\n"
    "Fact 2: The demon inside Emily had a certain level of control over her.\n"
    "Answer: Yes\n\n"
    "Fact 1: The selection process has started.\n"
    "Fact 2: The selection process continues to progress.\n"
    "Answer: No\n\n"
    "Fact 1: The footage contains information that can be analyzed.\n"
    "Fact 2: John has access to the footage from the camera.\n"
    "Answer: No\n\n"
    "Fact 1: The townsfolk are healthy and not infected with the mysterious virus.\n"
    "Fact 2: The infection is causing the townsfolk to behave strangely.\n"
    "Answer: Yes\n\n"
    "Fact 1: {fact1}\n"
    "Fact 2: {fact2}\n"
    "Answer: ";

std::unique_ptr<FactScorer> nli_service_scorer(NliScorerConfig cfg) {
    return std::make_unique<NliServiceScorer>(std::move(cfg));
}

std::unique_ptr<FactScorer> fewshot_chat_scorer(std::shared_ptr<ModelClient> client,
                                                std::string prompt_template,
                                                int max_retries) {
    return std::make_unique<FewshotChatScorer>(std::move(client),
                                               std::move(prompt_template), max_retries);
}

}  // namespace facttrack
