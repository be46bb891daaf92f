#include "facttrack/pipeline.hpp"

#include "facttrack/hash.hpp"
#include "facttrack/model_client.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace facttrack {

const char* to_string(InsertionOrder o) {
    return o == InsertionOrder::LevelOrder ? "level-order" : "pre-order";
}

const char* to_string(OnContradiction p) {
    return p == OnContradiction::RecordAndSkipUpdate ? "record-and-skip-update"
                                                     : "record-and-update";
}

std::string event_point_text(const OutlineEvent& ev) {
    std::string text = ev.main_event;
    if (ev.begin_event) text += " At the beginning, " + *ev.begin_event;
    if (ev.end_event) text += " At end, " + *ev.end_event;
    return text;
}

std::vector<ContradictionHit> process_event(const std::string& event_index,
                                            const std::string& event_text,
                                            const EventInterval& interval,
                                            WorldState& world, const Decomposer& decomposer,
                                            FactScorer& scorer, const ScorerThresholds& th,
                                            OnContradiction policy,
                                            ContradictionReport& report, std::size_t step) {
    Decomposition decomposition;
    try {
        decomposition = decomposer(event_text);
    } catch (const DecompositionError& e) {
        report.skips.push_back({step, event_index, e.what()});
        return {};
    }

    auto [pre_texts, post_texts] = expand_static(decomposition);
    std::vector<ContradictionHit> all_hits;

    auto insert_facts = [&](const std::vector<std::string>& texts, Direction d) {
        for (const auto& text : texts) {
            AtomicFact fact;
            fact.text = text;
            fact.direction = d;
            fact.source_event = event_index;
            fact.validity = determine_validity(text, d, interval, world, scorer, th);

            auto hits = detect_contradictions(fact, world, scorer, th);
            if (hits.empty() || policy == OnContradiction::RecordAndUpdate)
                update_world(fact, world, scorer, th);
            for (auto& hit : hits) {
                report.entries.push_back({
                    step,
                    event_index,
                    hit.existing_fact.source_event,
                    hit.new_fact.text,
                    hit.existing_fact.text,
                    hit.new_fact.direction,
                    hit.existing_fact.direction,
                    hit.new_fact.validity.str(),
                    hit.existing_fact.validity.str(),
                    hit.contradiction_score,
                    hit.similarity_score,
                });
                all_hits.push_back(std::move(hit));
            }
        }
    };

    insert_facts(pre_texts, Direction::Pre);
    insert_facts(post_texts, Direction::Post);
    return all_hits;
}

namespace {

ContradictionReport run_pipeline(const Outline& outline, const PipelineConfig& cfg,
                                 const Decomposer& decomposer, FactScorer& scorer,
                                 std::string outline_id) {
    validate_outline(outline);

    ContradictionReport report;
    report.outline_id = std::move(outline_id);
    report.scorer_id = scorer.id();
    report.policy = to_string(cfg.policy);
    report.insertion_order = to_string(cfg.order);
    report.epsilon = cfg.epsilon.str();
    report.thresholds = cfg.thresholds;
    {
        std::ostringstream cfg_repr;
        cfg_repr << report.scorer_id << '|' << report.policy << '|'
                 << report.insertion_order << '|' << report.epsilon << '|'
                 << cfg.thresholds.filter_sim << '|' << cfg.thresholds.same_sim << '|'
                 << cfg.thresholds.contradict_update << '|'
                 << cfg.thresholds.contradict_detect;
        report.config_hash = sha256_hex(cfg_repr.str());
    }

    auto intervals = assign_intervals(outline_tree(outline), EpsilonConfig(cfg.epsilon));
    std::vector<std::string> order = cfg.order == InsertionOrder::LevelOrder
                                         ? level_order(outline)
                                         : pre_order(outline);

    WorldState world;
    std::size_t step = 0;
    for (const auto& index : order) {
        const OutlineEvent& ev = event_by_index(outline, index);
        process_event(index, event_point_text(ev), intervals.at(index), world, decomposer,
                      scorer, cfg.thresholds, cfg.policy, report, step);
        ++step;
    }

    std::stable_sort(report.entries.begin(), report.entries.end(),
                     [](const ReportEntry& a, const ReportEntry& b) {
                         if (a.step != b.step) return a.step < b.step;
                         return a.contradiction_score > b.contradiction_score;
                     });
    return report;
}

}  // namespace

ContradictionReport process_outline(const Outline& outline, const PipelineConfig& cfg,
                                    const Decomposer& decomposer, FactScorer& scorer) {
    return run_pipeline(outline, cfg, decomposer, scorer,
                        sha256_hex(render_outline_json(outline)).substr(0, 16));
}

ContradictionReport process_document(const std::vector<std::string>& sentences,
                                     const PipelineConfig& cfg, const Decomposer& decomposer,
                                     FactScorer& scorer) {
    if (sentences.empty()) throw OutlineError("document has no sentences");
    Outline outline;
    for (std::size_t i = 0; i < sentences.size(); ++i)
        outline.events.push_back({std::to_string(i + 1), sentences[i], {}, {}, {}});
    ContradictionReport report = run_pipeline(
        outline, cfg, decomposer, scorer,
        sha256_hex(render_outline_json(outline)).substr(0, 16));
    report.doc_verdict = !report.entries.empty();
    return report;
}

std::string rewrite_event_with_facts(const std::string& event_text,
                                     const std::vector<FactWithStatus>& conflicting,
                                     ModelClient& client) {
    if (conflicting.empty())
        throw std::invalid_argument("rewrite_event_with_facts: no conflicting facts");
    std::ostringstream prompt;
    prompt << "Below is a event point which contradicts one or more Existing Facts. "
              "Please rewrite the event point to align with all Existing Facts, while "
              "keeping as much of the original information as possible and maintaining "
              "a clear and concise description.\n\n"
           << "event point: " << event_text << "\n\nExisting Facts:\n";
    for (std::size_t i = 0; i < conflicting.size(); ++i)
        prompt << (i + 1) << ". " << conflicting[i].status << ", " << conflicting[i].text
               << "\n";
    return client.cached_complete(prompt.str());
}

std::string rewrite_event_with_events(const std::string& event_text,
                                      const std::string& event_index,
                                      const std::vector<EventRef>& related,
                                      ModelClient& client) {
    if (related.empty())
        throw std::invalid_argument("rewrite_event_with_events: no related events");
    std::ostringstream prompt;
    prompt << "Below is a Current event point. Please rewrite it to make it more "
              "consistent with the given Existing event points, taking into account "
              "that the outline is structured as a tree. In this tree-like structure, "
              "individual points such as 1.1, 1.2, and 1.3 are child nodes of event "
              "point 1. Retain as much of the original content as possible, and "
              "maintain clarity and coherence.\n\n"
           << "Current event point " << event_index << ": " << event_text << "\n\n"
           << "Existing event points:\n";
    for (std::size_t i = 0; i < related.size(); ++i)
        prompt << (i + 1) << ". event point " << related[i].index << ": "
               << related[i].text << "\n";
    return client.cached_complete(prompt.str());
}

Outline generate_outline(const std::string& premise, int depth, int branching,
                         ModelClient& client, int max_retries) {
    if (depth < 1 || branching < 1)
        throw std::invalid_argument("generate_outline: depth and branching must be >= 1");

    Outline outline;
    outline.premise = premise;

    // breadth-first frontier of (index, parent context text)
    struct Pending {
        std::string index;  // empty for the root
        std::string context;
        int level;
    };
    std::vector<Pending> frontier{{"", "Premise: " + premise, 0}};

    while (!frontier.empty()) {
        std::vector<Pending> next;
        for (const auto& node : frontier) {
            if (node.level >= depth) continue;
            std::string prefix = node.index.empty() ? "" : node.index + ".";
            std::ostringstream prompt;
            prompt << node.context << "\n\n"
                   << "Can you break down "
                   << (node.index.empty() ? std::string("the premise")
                                          : "point " + node.index)
                   << " into up to " << branching
                   << " independent, chronological and similarly-scoped sub-points? "
                      "Also list the names of characters that appear. Please follow "
                      "the template below. Include detailed information about each "
                      "character in the \"Main event\". Do not answer anything else.\n\n";
            for (int j = 1; j <= std::min(branching, 2); ++j) {
                prompt << "point " << prefix << j << "\n"
                       << "Main event: [event]\n"
                       << "Characters: [character names]\n"
                       << "Begin event: [begin event]\n"
                       << "End event: [end event]\n\n";
            }
            if (branching > 2) prompt << "...\n";

            std::vector<OutlineEvent> blocks;
            std::string raw;
            bool ok = false;
            for (int attempt = 0; attempt < std::max(1, max_retries); ++attempt) {
                std::string p = attempt == 0 ? prompt.str()
                                             : prompt.str() + "\n(retry " +
                                                   std::to_string(attempt) + ")";
                raw = client.cached_complete(p);
                try {
                    blocks = parse_outline_blocks(raw);
                } catch (const OutlineError&) {
                    blocks.clear();
                }
                // keep only well-formed direct children of this node
                std::erase_if(blocks, [&](const OutlineEvent& ev) {
                    if (ev.main_event.empty()) return true;
                    if (ev.index.rfind(prefix, 0) != 0) return true;
                    std::string tail = ev.index.substr(prefix.size());
                    return tail.empty() ||
                           !std::all_of(tail.begin(), tail.end(), [](unsigned char c) {
                               return std::isdigit(c);
                           });
                });
                if (!blocks.empty() && blocks.size() <= static_cast<std::size_t>(branching)) {
                    ok = true;
                    break;
                }
            }
            if (!ok)
                throw GenerationError("unparseable expansion at node " +
                                          (node.index.empty() ? "<root>" : node.index),
                                      node.index);

            for (const auto& ev : blocks) {
                outline.events.push_back(ev);
                next.push_back({ev.index, "point " + ev.index + "\nMain event: " +
                                              ev.main_event,
                                node.level + 1});
            }
        }
        frontier = std::move(next);
    }

    validate_outline(outline);
    return outline;
}

}  // namespace facttrack
