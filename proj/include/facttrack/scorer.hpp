#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace facttrack {

// Threshold regime for the four predicates. The update and detect passes use
// different contradiction thresholds: a missed interval update is cheap, a
// missed detection is not.
struct ScorerThresholds {
    double filter_sim = 0.5;
    double same_sim = 0.95;
    double contradict_update = 0.8;
    double contradict_detect = 0.2359;
};

class ScoringError : public std::runtime_error {
public:
    ScoringError(const std::string& what, std::string raw_output = {})
        : std::runtime_error(what), raw_output_(std::move(raw_output)) {}
    const std::string& raw_output() const { return raw_output_; }

private:
    std::string raw_output_;
};

using TextPair = std::pair<std::string, std::string>;

// Pluggable similarity / contradiction scoring. Scores are in [0, 1] and must
// be stable for identical inputs within a run. The argument order is
// (chronologically earlier fact, later fact).
class FactScorer {
public:
    virtual ~FactScorer() = default;

    virtual double similarity(const std::string& a, const std::string& b) = 0;
    virtual double contradiction(const std::string& a, const std::string& b) = 0;

    // Batched variants must return scores in pair order, identical to the
    // unbatched calls.
    virtual std::vector<double> similarity_batch(const std::vector<TextPair>& pairs);
    virtual std::vector<double> contradiction_batch(const std::vector<TextPair>& pairs);

    virtual std::string id() const = 0;
};

// Deterministic scorer over the "name=value" micro-DSL:
//   similarity    = 1 if names equal, else 0
//   contradiction = 1 if names equal and values differ, else 0
// Non-DSL text scores 0 on both. Batches score in parallel.
std::unique_ptr<FactScorer> oracle_scorer();

// Splits a "name=value" statement; returns false if the text is not in DSL
// form.
bool parse_dsl_fact(const std::string& text, std::string& name, std::string& value);

bool passes_filter(const std::string& a, const std::string& b, FactScorer& scorer,
                   const ScorerThresholds& th);
bool is_same(const std::string& a, const std::string& b, FactScorer& scorer,
             const ScorerThresholds& th);
bool contradicts_for_update(const std::string& a, const std::string& b, FactScorer& scorer,
                            const ScorerThresholds& th);
bool contradicts_for_detect(const std::string& a, const std::string& b, FactScorer& scorer,
                            const ScorerThresholds& th);

}  // namespace facttrack
