#pragma once

#include "facttrack/decompose.hpp"
#include "facttrack/outline.hpp"
#include "facttrack/report.hpp"
#include "facttrack/scorer.hpp"
#include "facttrack/worldstate.hpp"

#include <string>
#include <vector>

namespace facttrack {

class ModelClient;

enum class InsertionOrder : std::uint8_t { LevelOrder, PreOrder };
enum class OnContradiction : std::uint8_t { RecordAndSkipUpdate, RecordAndUpdate };

const char* to_string(InsertionOrder o);
const char* to_string(OnContradiction p);

struct PipelineConfig {
    InsertionOrder order = InsertionOrder::LevelOrder;
    OnContradiction policy = OnContradiction::RecordAndSkipUpdate;
    bool rewrite_enabled = false;
    int rewrite_attempts = 5;
    int resample_attempts = 10;
    Rational epsilon{1, 1000000};
    ScorerThresholds thresholds;
};

// Decompose -> determine -> detect -> update for one event. Pre-facts are
// processed before post-facts. A fact with hits is recorded; under the
// default policy it is not inserted. Decomposition failure records a skip
// entry and leaves the world unchanged.
std::vector<ContradictionHit> process_event(const std::string& event_index,
                                            const std::string& event_text,
                                            const EventInterval& interval,
                                            WorldState& world, const Decomposer& decomposer,
                                            FactScorer& scorer, const ScorerThresholds& th,
                                            OnContradiction policy,
                                            ContradictionReport& report, std::size_t step);

// Assigns intervals over [0, 1], inserts events in the configured order, and
// aggregates hits into a deterministic report.
ContradictionReport process_outline(const Outline& outline, const PipelineConfig& cfg,
                                    const Decomposer& decomposer, FactScorer& scorer);

// Document mode: each sentence becomes a flat top-level event; the report
// additionally carries a binary verdict (contradictory iff any entry exists).
ContradictionReport process_document(const std::vector<std::string>& sentences,
                                     const PipelineConfig& cfg, const Decomposer& decomposer,
                                     FactScorer& scorer);

// The text handed to the decomposer for one outline event (main event plus
// optional boundary events).
std::string event_point_text(const OutlineEvent& ev);

struct FactWithStatus {
    std::string status;  // e.g. "pre-fact, valid until event 2.1"
    std::string text;
};

std::string rewrite_event_with_facts(const std::string& event_text,
                                     const std::vector<FactWithStatus>& conflicting,
                                     ModelClient& client);

struct EventRef {
    std::string index;
    std::string text;
};

std::string rewrite_event_with_events(const std::string& event_text,
                                      const std::string& event_index,
                                      const std::vector<EventRef>& related,
                                      ModelClient& client);

class GenerationError : public std::runtime_error {
public:
    GenerationError(const std::string& what, std::string node_index = {})
        : std::runtime_error(what), node_index_(std::move(node_index)) {}
    const std::string& node_index() const { return node_index_; }

private:
    std::string node_index_;
};

// Breadth-first outline generation; each node's prompt context is its direct
// parent only. depth 3 x branching 3 yields 39 events.
Outline generate_outline(const std::string& premise, int depth, int branching,
                         ModelClient& client, int max_retries = 3);

}  // namespace facttrack
