#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "facttrack/scorer.hpp"

#include <cmath>
#include <random>

using namespace facttrack;

TEST_CASE("oracle scorer over the name=value DSL") {
    auto s = oracle_scorer();
    CHECK(s->contradiction("x=1", "x=0") == 1.0);
    CHECK(s->similarity("x=1", "x=0") == 1.0);
    CHECK(s->contradiction("x=1", "x=1") == 0.0);
    CHECK(s->similarity("x=1", "x=1") == 1.0);
    CHECK(s->contradiction("x=1", "y=0") == 0.0);
    CHECK(s->similarity("x=1", "y=0") == 0.0);
    // non-DSL text scores zero on both
    CHECK(s->similarity("the door is open", "the door is open") == 0.0);
    CHECK(s->contradiction("x=1", "not a fact") == 0.0);
    CHECK(s->id() == "oracle");
}

TEST_CASE("oracle scorer symmetry") {
    auto s = oracle_scorer();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        std::string a = "v" + std::to_string(rng() % 5) + "=" + std::to_string(rng() % 3);
        std::string b = "v" + std::to_string(rng() % 5) + "=" + std::to_string(rng() % 3);
        CHECK(s->similarity(a, b) == s->similarity(b, a));
        CHECK(s->contradiction(a, b) == s->contradiction(b, a));
    }
}

TEST_CASE("batched scoring equals unbatched, in order") {
    auto s = oracle_scorer();
    std::vector<TextPair> pairs;
    std::mt19937_64 rng(9);
    for (int i = 0; i < 500; ++i)
        pairs.emplace_back("v" + std::to_string(rng() % 7) + "=" + std::to_string(rng() % 3),
                           "v" + std::to_string(rng() % 7) + "=" + std::to_string(rng() % 3));
    auto sim = s->similarity_batch(pairs);
    auto con = s->contradiction_batch(pairs);
    REQUIRE(sim.size() == pairs.size());
    REQUIRE(con.size() == pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        CHECK(sim[i] == s->similarity(pairs[i].first, pairs[i].second));
        CHECK(con[i] == s->contradiction(pairs[i].first, pairs[i].second));
    }
}

TEST_CASE("parse_dsl_fact") {
    std::string n, v;
    CHECK(parse_dsl_fact("door=open", n, v));
    CHECK(n == "door");
    CHECK(v == "open");
    CHECK(!parse_dsl_fact("no equals sign", n, v));
    CHECK(!parse_dsl_fact("=value", n, v));
    CHECK(!parse_dsl_fact("name=", n, v));
}

TEST_CASE("predicates with oracle scores") {
    auto s = oracle_scorer();
    ScorerThresholds th;
    CHECK(passes_filter("x=1", "x=0", *s, th));
    CHECK(is_same("x=1", "x=0", *s, th));
    CHECK(contradicts_for_update("x=1", "x=0", *s, th));
    CHECK(contradicts_for_detect("x=1", "x=0", *s, th));
    CHECK(!passes_filter("x=1", "y=0", *s, th));
    CHECK(!contradicts_for_detect("x=1", "x=1", *s, th));
}

namespace {

// Fixed-score scorer for probing threshold strictness.
class ConstScorer : public FactScorer {
public:
    ConstScorer(double sim, double con) : sim_(sim), con_(con) {}
    double similarity(const std::string&, const std::string&) override { return sim_; }
    double contradiction(const std::string&, const std::string&) override { return con_; }
    std::string id() const override { return "const"; }

private:
    double sim_, con_;
};

}  // namespace

TEST_CASE("threshold comparisons are strict") {
    ScorerThresholds th;

    ConstScorer at_filter(0.5, 0.0);
    CHECK(!passes_filter("a", "b", at_filter, th));
    ConstScorer above_filter(std::nextafter(0.5, 1.0), 0.0);
    CHECK(passes_filter("a", "b", above_filter, th));

    ConstScorer at_same(0.95, 0.0);
    CHECK(!is_same("a", "b", at_same, th));
    ConstScorer above_same(std::nextafter(0.95, 1.0), 0.0);
    CHECK(is_same("a", "b", above_same, th));

    ConstScorer at_update(1.0, 0.8);
    CHECK(!contradicts_for_update("a", "b", at_update, th));
    ConstScorer above_update(1.0, std::nextafter(0.8, 1.0));
    CHECK(contradicts_for_update("a", "b", above_update, th));

    ConstScorer at_detect(1.0, 0.2359);
    CHECK(!contradicts_for_detect("a", "b", at_detect, th));
    ConstScorer above_detect(1.0, std::nextafter(0.2359, 1.0));
    CHECK(contradicts_for_detect("a", "b", above_detect, th));
    ConstScorer detect_2360(1.0, 0.2360);
    CHECK(contradicts_for_detect("a", "b", detect_2360, th));
}

TEST_CASE("default batch implementation is the serial loop") {
    ConstScorer s(0.25, 0.75);
    std::vector<TextPair> pairs{{"a", "b"}, {"c", "d"}};
    auto sim = s.similarity_batch(pairs);
    auto con = s.contradiction_batch(pairs);
    CHECK(sim == std::vector<double>{0.25, 0.25});
    CHECK(con == std::vector<double>{0.75, 0.75});
}
