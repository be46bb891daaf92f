#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "facttrack/model_client.hpp"
#include "facttrack/remote_scorers.hpp"

#include <httplib.h>
#include <json.hpp>

#include <memory>
#include <thread>

using namespace facttrack;
using Json = nlohmann::json;

namespace {

// In-process NLI/embedding stub speaking the documented wire contract.
class StubService {
public:
    StubService() {
        server_.Post("/score", [this](const httplib::Request& req, httplib::Response& res) {
            ++score_calls;
            Json body = Json::parse(req.body);
            Json out;
            out["contradiction"] = Json::array();
            for (const auto& pair : body.at("pairs")) {
                last_premise = pair.at("premise").get<std::string>();
                last_hypothesis = pair.at("hypothesis").get<std::string>();
                out["contradiction"].push_back(0.8462);
            }
            res.set_content(out.dump(), "application/json");
        });
        server_.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
            ++embed_calls;
            Json body = Json::parse(req.body);
            Json out;
            out["embeddings"] = Json::array();
            for (const auto& t : body.at("texts")) {
                std::string s = t.get<std::string>();
                // orthogonal unit vectors for different first letters
                std::vector<double> v(4, 0.0);
                v[s.empty() ? 0 : (s[0] % 4)] = 1.0;
                out["embeddings"].push_back(v);
            }
            res.set_content(out.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~StubService() {
        server_.stop();
        thread_.join();
    }

    int port() const { return port_; }
    std::string url(const std::string& path) const {
        return "http://127.0.0.1:" + std::to_string(port_) + path;
    }

    int score_calls = 0;
    int embed_calls = 0;
    std::string last_premise, last_hypothesis;

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
};

}  // namespace

TEST_CASE("nli scorer returns the service probability and preserves pair order") {
    StubService svc;
    NliScorerConfig cfg;
    cfg.score_endpoint = svc.url("/score");
    cfg.embed_endpoint = svc.url("/embed");
    auto s = nli_service_scorer(cfg);
    CHECK(s->contradiction("a", "b") == doctest::Approx(0.8462));
    auto batch = s->contradiction_batch({{"p1", "h1"}, {"p2", "h2"}});
    REQUIRE(batch.size() == 2);
    CHECK(batch[0] == doctest::Approx(0.8462));
    CHECK(svc.last_premise == "p2");
    CHECK(svc.last_hypothesis == "h2");
    CHECK(s->id() == "nli");
}

TEST_CASE("identical texts embed to similarity 1.0; distinct directions score lower") {
    StubService svc;
    NliScorerConfig cfg;
    cfg.score_endpoint = svc.url("/score");
    cfg.embed_endpoint = svc.url("/embed");
    auto s = nli_service_scorer(cfg);
    CHECK(s->similarity("alpha", "alpha") == doctest::Approx(1.0));
    // orthogonal embeddings, cosine 0 mapped to 0.5
    CHECK(s->similarity("alpha", "bravo") == doctest::Approx(0.5));
    // embedding cache: 2 distinct texts -> 2 embed calls total
    CHECK(svc.embed_calls == 2);

    NliScorerConfig raw = cfg;
    raw.map_cosine = false;
    auto s2 = nli_service_scorer(raw);
    CHECK(s2->similarity("alpha", "bravo") == doctest::Approx(0.0));
}

TEST_CASE("unreachable service raises TransportError after retries") {
    NliScorerConfig cfg;
    cfg.score_endpoint = "http://127.0.0.1:9/score";  // discard port, closed
    cfg.embed_endpoint = "http://127.0.0.1:9/embed";
    cfg.max_retries = 2;
    auto s = nli_service_scorer(cfg);
    CHECK_THROWS_AS(s->contradiction("a", "b"), TransportError);
}

TEST_CASE("4xx from the service raises ProtocolError immediately") {
    StubService svc;
    NliScorerConfig cfg;
    cfg.score_endpoint = svc.url("/missing");
    cfg.embed_endpoint = svc.url("/embed");
    auto s = nli_service_scorer(cfg);
    CHECK_THROWS_AS(s->contradiction("a", "b"), ProtocolError);
}

namespace {

std::shared_ptr<ModelClient> scripted_client(std::vector<std::string> replies,
                                             std::vector<std::string>* prompts = nullptr) {
    auto counter = std::make_shared<std::size_t>(0);
    ClientConfig cfg;
    return std::make_shared<ModelClient>(cfg, [=](const std::string& p) {
        if (prompts) prompts->push_back(p);
        auto i = (*counter)++;
        return replies[std::min(i, replies.size() - 1)];
    });
}

}  // namespace

TEST_CASE("fewshot scorer maps Yes/No to 1/0 and fills both fact slots") {
    std::vector<std::string> prompts;
    auto yes = fewshot_chat_scorer(scripted_client({"Yes"}, &prompts));
    CHECK(yes->contradiction(
              "The society in Europe was functioning normally without any widespread "
              "fear or despair.",
              "The populace of Europe is living in fear and despair due to the Black "
              "Death.") == 1.0);
    REQUIRE(prompts.size() == 1);
    CHECK(prompts[0].find("Fact 1: The society in Europe was functioning normally") !=
          std::string::npos);
    CHECK(prompts[0].find("Fact 2: The populace of Europe is living in fear") !=
          std::string::npos);
    CHECK(prompts[0].find("Do the following statements contradict each other?") !=
          std::string::npos);

    auto no = fewshot_chat_scorer(scripted_client({"Answer: No"}));
    CHECK(no->contradiction("The selection process has started.",
                            "The selection process continues to progress.") == 0.0);

    auto s = fewshot_chat_scorer(scripted_client({"Yes"}));
    CHECK(s->similarity("anything", "else") == 1.0);
    CHECK(s->id() == "fewshot");
}

TEST_CASE("fewshot scorer retries then raises ScoringError with raw output") {
    std::vector<std::string> prompts;
    auto s = fewshot_chat_scorer(scripted_client({"maybe"}, &prompts));
    try {
        s->contradiction("a", "b");
        FAIL("expected ScoringError");
    } catch (const ScoringError& e) {
        CHECK(e.raw_output() == "maybe");
    }
    CHECK(prompts.size() == 3);
    // retry prompts are distinguishable so a cache cannot replay the failure
    CHECK(prompts[0] != prompts[1]);
    CHECK(prompts[1] != prompts[2]);
}

TEST_CASE("fewshot scorer recovers when a retry parses") {
    auto s = fewshot_chat_scorer(scripted_client({"hmm", "Yes"}));
    CHECK(s->contradiction("a", "b") == 1.0);
}
