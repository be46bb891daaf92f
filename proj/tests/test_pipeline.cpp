#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "facttrack/model_client.hpp"
#include "facttrack/pipeline.hpp"
#include "facttrack/synth.hpp"

#include <map>
#include <set>
#include <string>

using namespace facttrack;

namespace {

Decomposer dsl_decomposer() {
    return [](const std::string& text) { return mock_decompose(text); };
}

Outline flat_outline(std::vector<std::string> events) {
    Outline o;
    for (std::size_t i = 0; i < events.size(); ++i)
        o.events.push_back({std::to_string(i + 1), std::move(events[i]), {}, {}, {}});
    return o;
}

}  // namespace

TEST_CASE("event_point_text composes main and boundary events") {
    OutlineEvent ev{"1", "Main.", "It begins.", "It ends.", {}};
    CHECK(event_point_text(ev) == "Main. At the beginning, It begins. At end, It ends.");
    OutlineEvent bare{"1", "Main.", {}, {}, {}};
    CHECK(event_point_text(bare) == "Main.");
}

TEST_CASE("process_event inserts facts into an empty world without hits") {
    WorldState world;
    auto scorer = oracle_scorer();
    ScorerThresholds th;
    ContradictionReport report;
    auto hits = process_event("1", "PRE door=open; POST door=closed",
                              EventInterval(Rational(0), Rational(1, 3)), world,
                              dsl_decomposer(), *scorer, th,
                              OnContradiction::RecordAndSkipUpdate, report, 0);
    CHECK(hits.empty());
    CHECK(world.pre_facts().size() == 1);
    CHECK(world.post_facts().size() == 1);
    CHECK(report.entries.empty());
}

TEST_CASE("process_event flags a later pre-fact against a stored post-fact") {
    WorldState world;
    auto scorer = oracle_scorer();
    ScorerThresholds th;
    ContradictionReport report;
    process_event("1", "PRE door=open; POST door=closed",
                  EventInterval(Rational(0), Rational(1, 3)), world, dsl_decomposer(),
                  *scorer, th, OnContradiction::RecordAndSkipUpdate, report, 0);
    auto hits = process_event("2", "PRE door=open",
                              EventInterval(Rational(2, 3), Rational(1)), world,
                              dsl_decomposer(), *scorer, th,
                              OnContradiction::RecordAndSkipUpdate, report, 1);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].existing_fact.text == "door=closed");
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].event_new == "2");
    CHECK(report.entries[0].event_existing == "1");
    CHECK(report.entries[0].fact_new == "door=open");
    CHECK(report.entries[0].fact_existing == "door=closed");
    // default policy: the flagged fact was not inserted
    CHECK(world.pre_facts().size() == 1);
}

TEST_CASE("process_event records a skip on decomposition failure") {
    WorldState world;
    auto scorer = oracle_scorer();
    ScorerThresholds th;
    ContradictionReport report;
    auto hits = process_event("1", "not a DSL event",
                              EventInterval(Rational(0), Rational(1)), world,
                              dsl_decomposer(), *scorer, th,
                              OnContradiction::RecordAndSkipUpdate, report, 0);
    CHECK(hits.empty());
    CHECK(world.size() == 0);
    REQUIRE(report.skips.size() == 1);
    CHECK(report.skips[0].event == "1");
}

TEST_CASE("process_outline finds exactly the planted pair") {
    auto scorer = oracle_scorer();
    PipelineConfig cfg;
    auto r = synth_outline(5, 3, 3, 1, 0);
    auto report = process_outline(r.outline, cfg, dsl_decomposer(), *scorer);
    REQUIRE(report.entries.size() == 1);
    REQUIRE(r.gold.pairs.size() == 1);
    std::set<std::string> got{report.entries[0].event_new,
                              report.entries[0].event_existing};
    std::set<std::string> want{r.gold.pairs[0].event_a, r.gold.pairs[0].event_b};
    CHECK(got == want);
}

TEST_CASE("process_outline with no plants yields an empty report") {
    auto scorer = oracle_scorer();
    PipelineConfig cfg;
    auto r = synth_outline(6, 3, 3, 0, 10);
    auto report = process_outline(r.outline, cfg, dsl_decomposer(), *scorer);
    CHECK(report.entries.empty());
    CHECK(!report.outline_id.empty());
    CHECK(report.scorer_id == "oracle");
    CHECK(report.policy == "record-and-skip-update");
    CHECK(report.insertion_order == "level-order");
}

TEST_CASE("identical runs render byte-identical reports") {
    auto scorer = oracle_scorer();
    PipelineConfig cfg;
    auto r = synth_outline(7, 3, 3, 4, 12);
    auto a = render_report_json(process_outline(r.outline, cfg, dsl_decomposer(), *scorer));
    auto b = render_report_json(process_outline(r.outline, cfg, dsl_decomposer(), *scorer));
    CHECK(a == b);
}

TEST_CASE("pre-order insertion finds the same planted pairs") {
    auto scorer = oracle_scorer();
    auto r = synth_outline(8, 3, 3, 3, 6);
    PipelineConfig cfg;
    cfg.order = InsertionOrder::PreOrder;
    auto report = process_outline(r.outline, cfg, dsl_decomposer(), *scorer);
    std::set<std::set<std::string>> got, want;
    for (const auto& e : report.entries) got.insert({e.event_new, e.event_existing});
    for (const auto& g : r.gold.pairs) want.insert({g.event_a, g.event_b});
    CHECK(got == want);
    CHECK(report.insertion_order == "pre-order");
}

TEST_CASE("record-and-skip-update world equals inserting only unflagged facts") {
    auto scorer = oracle_scorer();
    ScorerThresholds th;
    auto r = synth_outline(9, 2, 3, 2, 4);
    PipelineConfig cfg;

    // run A: the pipeline with the default policy
    WorldState wa;
    ContradictionReport ra;
    auto intervals = assign_intervals(outline_tree(r.outline), EpsilonConfig(cfg.epsilon));
    std::size_t step = 0;
    for (const auto& idx : level_order(r.outline)) {
        process_event(idx, event_point_text(event_by_index(r.outline, idx)),
                      intervals.at(idx), wa, dsl_decomposer(), *scorer, th,
                      OnContradiction::RecordAndSkipUpdate, ra, step++);
    }

    // run B: replay, inserting only facts that were not flagged in run A
    std::set<std::pair<std::size_t, std::string>> flagged;
    for (const auto& e : ra.entries) flagged.insert({e.step, e.fact_new});
    WorldState wb;
    step = 0;
    for (const auto& idx : level_order(r.outline)) {
        auto d = mock_decompose(event_point_text(event_by_index(r.outline, idx)));
        auto [pre, post] = expand_static(d);
        auto insert = [&](const std::vector<std::string>& texts, Direction dir) {
            for (const auto& text : texts) {
                if (flagged.count({step, text})) continue;
                AtomicFact f;
                f.text = text;
                f.direction = dir;
                f.source_event = idx;
                f.validity = determine_validity(text, dir, intervals.at(idx), wb, *scorer, th);
                update_world(f, wb, *scorer, th);
            }
        };
        insert(pre, Direction::Pre);
        insert(post, Direction::Post);
        ++step;
    }

    auto sig = [](const WorldState& w) {
        std::string s;
        for (Direction d : {Direction::Pre, Direction::Post})
            for (const auto& f : w.facts(d))
                s += f.text + "@" + f.validity.str() + ";";
        return s;
    };
    CHECK(sig(wa) == sig(wb));
}

TEST_CASE("report entries never pair an event with an ancestor or descendant") {
    auto scorer = oracle_scorer();
    PipelineConfig cfg;
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        auto r = synth_outline(seed, 3, 3, 5, 15);
        auto report = process_outline(r.outline, cfg, dsl_decomposer(), *scorer);
        for (const auto& e : report.entries) {
            CHECK(!is_ancestor(e.event_new, e.event_existing));
            CHECK(!is_ancestor(e.event_existing, e.event_new));
        }
    }
}

TEST_CASE("process_document plants and verdicts") {
    auto scorer = oracle_scorer();
    PipelineConfig cfg;

    auto contradictory = process_document({"POST x=1", "PRE x=0"}, cfg, dsl_decomposer(),
                                          *scorer);
    REQUIRE(contradictory.doc_verdict.has_value());
    CHECK(*contradictory.doc_verdict == true);
    CHECK(!contradictory.entries.empty());

    auto single = process_document({"POST x=1"}, cfg, dsl_decomposer(), *scorer);
    CHECK(*single.doc_verdict == false);
    CHECK(single.entries.empty());

    // same-name values that agree: similarity passes but contradiction is 0
    auto consistent = process_document({"POST x=1", "PRE x=1"}, cfg, dsl_decomposer(),
                                       *scorer);
    CHECK(*consistent.doc_verdict == false);

    // different names: the filter gate blocks the pair
    auto unrelated = process_document({"POST x=1", "PRE y=0"}, cfg, dsl_decomposer(),
                                      *scorer);
    CHECK(*unrelated.doc_verdict == false);

    CHECK_THROWS_AS(process_document({}, cfg, dsl_decomposer(), *scorer), OutlineError);
}

TEST_CASE("record-and-update policy still reports the plant") {
    auto scorer = oracle_scorer();
    PipelineConfig cfg;
    cfg.policy = OnContradiction::RecordAndUpdate;
    auto r = synth_outline(11, 2, 3, 1, 0);
    auto report = process_outline(r.outline, cfg, dsl_decomposer(), *scorer);
    CHECK(report.policy == "record-and-update");
    REQUIRE(report.entries.size() >= 1);
    std::set<std::string> got{report.entries[0].event_new,
                              report.entries[0].event_existing};
    CHECK(got == std::set<std::string>{r.gold.pairs[0].event_a, r.gold.pairs[0].event_b});
}

TEST_CASE("rewrite prompts fill their templates") {
    ClientConfig cc;
    std::string seen;
    ModelClient client(cc, [&](const std::string& p) {
        seen = p;
        return std::string("Rewritten event.");
    });

    auto out = rewrite_event_with_facts(
        "Eva leaves the store.",
        {{"pre-fact, valid until event 2.1", "Eva is in the store"}}, client);
    CHECK(out == "Rewritten event.");
    CHECK(seen.find("rewrite the event point to align") != std::string::npos);
    CHECK(seen.find("event point: Eva leaves the store.") != std::string::npos);
    CHECK(seen.find("1. pre-fact, valid until event 2.1, Eva is in the store") !=
          std::string::npos);
    CHECK_THROWS_AS(rewrite_event_with_facts("x", {}, client), std::invalid_argument);

    auto out2 = rewrite_event_with_events("Eva leaves.", "2.1",
                                          {{"1.1", "Eva enters the store."}}, client);
    CHECK(out2 == "Rewritten event.");
    CHECK(seen.find("Current event point 2.1: Eva leaves.") != std::string::npos);
    CHECK(seen.find("1. event point 1.1: Eva enters the store.") != std::string::npos);
    CHECK_THROWS_AS(rewrite_event_with_events("x", "1", {}, client), std::invalid_argument);
}

namespace {

// Transport that expands any node into exactly `branching` children following
// the prompt's template.
ModelClient::Transport outline_transport(int branching) {
    return [branching](const std::string& prompt) {
        // find the requested child prefix from the first template block, which
        // follows the instruction paragraph
        std::string prefix;
        auto anchor = prompt.find("anything else.");
        auto pos = anchor == std::string::npos ? std::string::npos
                                               : prompt.find("point ", anchor);
        if (pos != std::string::npos) {
            auto eol = prompt.find('\n', pos);
            std::string first = prompt.substr(pos + 6, eol - pos - 6);
            prefix = first.substr(0, first.rfind('1'));
        }
        std::string out;
        for (int j = 1; j <= branching; ++j) {
            out += "point " + prefix + std::to_string(j) + "\n";
            out += "Main event: Event " + prefix + std::to_string(j) + " happens.\n";
            out += "Characters: Ann, Ben\n";
            out += "Begin event: It begins.\n";
            out += "End event: It ends.\n\n";
        }
        return out;
    };
}

}  // namespace

TEST_CASE("generate_outline counts and structure") {
    ClientConfig cc;
    ModelClient client(cc, outline_transport(3));
    auto flat = generate_outline("A premise.", 1, 3, client);
    CHECK(flat.events.size() == 3);

    auto full = generate_outline("A premise.", 3, 3, client);
    CHECK(full.events.size() == 39);
    CHECK(full.premise == "A premise.");
    CHECK_NOTHROW(event_by_index(full, "3.3.3"));
    CHECK(event_by_index(full, "1.2").main_event == "Event 1.2 happens.");

    CHECK_THROWS_AS(generate_outline("p", 0, 3, client), std::invalid_argument);
}

TEST_CASE("generate_outline raises GenerationError naming the node") {
    ClientConfig cc;
    ModelClient client(cc, [](const std::string&) { return std::string("nonsense"); });
    try {
        generate_outline("A premise.", 1, 3, client);
        FAIL("expected GenerationError");
    } catch (const GenerationError& e) {
        CHECK(e.node_index() == "");
    }
}

TEST_CASE("entries are sorted by step then descending score") {
    auto scorer = oracle_scorer();
    PipelineConfig cfg;
    auto r = synth_outline(13, 3, 3, 6, 10);
    auto report = process_outline(r.outline, cfg, dsl_decomposer(), *scorer);
    for (std::size_t i = 1; i < report.entries.size(); ++i) {
        const auto& a = report.entries[i - 1];
        const auto& b = report.entries[i];
        CHECK((a.step < b.step ||
               (a.step == b.step && a.contradiction_score >= b.contradiction_score)));
    }
}
