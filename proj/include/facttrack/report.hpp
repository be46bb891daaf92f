#pragma once

#include "facttrack/scorer.hpp"
#include "facttrack/time.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace facttrack {

class ReportError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReportEntry {
    std::size_t step = 0;        // insertion step of the flagged (new) fact
    std::string event_new;       // event of the newly inserted fact
    std::string event_existing;  // event of the stored fact it hit
    std::string fact_new;
    std::string fact_existing;
    Direction dir_new = Direction::Pre;
    Direction dir_existing = Direction::Post;
    std::string interval_new;       // validity intervals at detection time
    std::string interval_existing;
    double contradiction_score = 0.0;
    double similarity_score = 0.0;
};

struct SkipEntry {
    std::size_t step = 0;
    std::string event;
    std::string reason;
};

struct ContradictionReport {
    std::string outline_id;
    std::string scorer_id;
    std::string policy;
    std::string insertion_order;
    std::string epsilon;
    ScorerThresholds thresholds;
    std::string config_hash;
    std::vector<ReportEntry> entries;  // sorted by (step, descending score)
    std::vector<SkipEntry> skips;
    std::optional<bool> doc_verdict;  // document mode only
};

// Deterministic serialization: fixed key order, entries already sorted;
// re-serializing a parsed report is byte-identical.
std::string render_report_json(const ContradictionReport& report);
ContradictionReport parse_report_json(const std::string& text);

}  // namespace facttrack
