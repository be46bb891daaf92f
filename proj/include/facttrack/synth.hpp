#pragma once

#include "facttrack/outline.hpp"
#include "facttrack/report.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace facttrack {

// A planted cross-direction conflict: a post-fact of event_a (earlier on the
// timeline) against a pre-fact of event_b (later), constructed to satisfy the
// checkpoint-overlap condition under default validity intervals.
struct GoldPair {
    std::string event_a;
    std::string event_b;
    std::string fact_a;  // post-fact text
    std::string fact_b;  // pre-fact text

    friend bool operator==(const GoldPair&, const GoldPair&) = default;
};

struct GoldSpec {
    std::vector<GoldPair> pairs;
};

std::string render_gold_json(const GoldSpec& gold);
GoldSpec parse_gold_json(const std::string& text);

class SynthError : public std::runtime_error {
public:
    SynthError(const std::string& what, int max_feasible)
        : std::runtime_error(what), max_feasible_(max_feasible) {}
    int max_feasible() const { return max_feasible_; }

private:
    int max_feasible_;
};

struct SynthResult {
    Outline outline;
    GoldSpec gold;
};

// Deterministically generates a DSL outline over a fresh variable pool with
// exactly `planted` detectable cross-direction conflicts plus `distractors`
// constructions that each fail at least one detection gate (repeats,
// same-direction update chains, cross pairs without checkpoint overlap).
// Throws SynthError naming the maximum feasible plant count.
SynthResult synth_outline(std::uint64_t seed, int depth, int branching, int planted,
                          int distractors);

struct PrMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Precision/recall/F1 at unordered event-pair granularity. An empty
// prediction set scores precision 0 against a non-empty gold (and 1 when the
// gold is also empty).
PrMetrics evaluate_report(const ContradictionReport& report, const GoldSpec& gold);

}  // namespace facttrack
