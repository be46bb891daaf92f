#pragma once

#include "facttrack/scorer.hpp"
#include "facttrack/time.hpp"
#include "facttrack/timeline.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace facttrack {

struct AtomicFact {
    std::int64_t id = -1;
    std::string text;
    Direction direction = Direction::Pre;
    ValidityInterval validity;
    std::string source_event;
    std::optional<std::vector<float>> embedding;
};

struct ContradictionHit {
    AtomicFact new_fact;
    AtomicFact existing_fact;
    double contradiction_score = 0.0;
    double similarity_score = 0.0;
};

// Two ordered fact stores, one per direction. Single-writer: mutations must
// be externally serialized.
class WorldState {
public:
    const std::vector<AtomicFact>& pre_facts() const { return pre_facts_; }
    const std::vector<AtomicFact>& post_facts() const { return post_facts_; }
    std::vector<AtomicFact>& facts(Direction d) {
        return d == Direction::Pre ? pre_facts_ : post_facts_;
    }
    const std::vector<AtomicFact>& facts(Direction d) const {
        return d == Direction::Pre ? pre_facts_ : post_facts_;
    }

    std::int64_t next_id() const { return next_id_; }
    std::int64_t take_id() { return next_id_++; }

    std::size_t size() const { return pre_facts_.size() + post_facts_.size(); }

private:
    std::vector<AtomicFact> pre_facts_;
    std::vector<AtomicFact> post_facts_;
    std::int64_t next_id_ = 0;
};

// Determines the validity interval of a new fact from the world state.
// Pre case: start (L, R] = (-inf, event.lo]; scan same-direction facts with
// hi < R in descending hi order (ties: lower id first); at the first fact
// that is Same or passes Filter and contradicts at the update threshold, set
// L to that fact's hi and stop. Post case is the exact mirror.
ValidityInterval determine_validity(const std::string& text, Direction d,
                                    const EventInterval& event, const WorldState& world,
                                    FactScorer& scorer, const ScorerThresholds& th);

// Flags every opposite-direction stored fact whose checkpoints both overlap
// the new fact's interval, passes the similarity filter, and scores above the
// detect threshold. Candidate pairs are scored in batch; hits keep stored
// insertion order.
std::vector<ContradictionHit> detect_contradictions(const AtomicFact& fact,
                                                    const WorldState& world,
                                                    FactScorer& scorer,
                                                    const ScorerThresholds& th);

// Serial quadratic reference: the literal triple-filter scan over all stored
// opposite-direction facts, one scorer call at a time. Kept as the
// equivalence oracle for the batched implementation and for benchmarking.
std::vector<ContradictionHit> detect_contradictions_reference(const AtomicFact& fact,
                                                              const WorldState& world,
                                                              FactScorer& scorer,
                                                              const ScorerThresholds& th);

// Truncates same-direction stored facts that overlap the new fact per the
// update condition, deletes facts whose interval becomes empty, then appends
// the new fact with a fresh id. A Same match instead shrinks the new fact's
// own boundary; a new fact shrunk to nothing is dropped.
void update_world(AtomicFact fact, WorldState& world, FactScorer& scorer,
                  const ScorerThresholds& th);

// All facts whose validity interval contains t under each direction's
// openness convention.
std::vector<AtomicFact> snapshot_at(const WorldState& world, const TimePoint& t);

}  // namespace facttrack
