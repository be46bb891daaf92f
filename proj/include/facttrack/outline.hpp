#pragma once

#include "facttrack/timeline.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace facttrack {

class OutlineError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutlineEvent {
    std::string index;  // "2.3.1"
    std::string main_event;
    std::optional<std::string> begin_event;
    std::optional<std::string> end_event;
    std::optional<std::vector<std::string>> characters;

    friend bool operator==(const OutlineEvent&, const OutlineEvent&) = default;
};

// A premise plus a flat, index-keyed event list forming a proper tree
// ("1.2.3" is a child of "1.2").
struct Outline {
    std::string premise;
    std::vector<OutlineEvent> events;

    friend bool operator==(const Outline&, const Outline&) = default;
};

// Splits "1.2.3" into {1, 2, 3}. Throws OutlineError on malformed indices.
std::vector<int> parse_index(const std::string& index);

bool is_ancestor(const std::string& a, const std::string& b);  // a strict ancestor of b

// Validates tree structure (every child's parent present, indices unique,
// non-empty) and throws OutlineError otherwise.
void validate_outline(const Outline& outline);

// The id tree for timeline::assign_intervals; the root node id is "" and
// spans the whole narrative.
EventTreeNode outline_tree(const Outline& outline);

// Event indices in breadth-first order (depth, then numeric index order).
std::vector<std::string> level_order(const Outline& outline);
// Depth-first pre-order.
std::vector<std::string> pre_order(const Outline& outline);

const OutlineEvent& event_by_index(const Outline& outline, const std::string& index);

// Structured (JSON, schema "facttrack-outline-v1") and plain-text ("point
// 1.2" blocks) forms; the two round-trip losslessly.
Outline parse_outline_json(const std::string& text);
std::string render_outline_json(const Outline& outline);
Outline parse_outline_text(const std::string& text);
// "point x.y" blocks without whole-tree validation (for parsing one node's
// expansion).
std::vector<OutlineEvent> parse_outline_blocks(const std::string& text);
std::string render_outline_text(const Outline& outline);

// Reads either form, keyed on whether the content starts with '{'.
Outline parse_outline_any(const std::string& text);

}  // namespace facttrack
