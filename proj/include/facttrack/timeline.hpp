#pragma once

#include "facttrack/time.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace facttrack {

// Raised when an interval is too narrow to hold k children plus (k+1)
// epsilon gaps.
class PaddingOverflowError : public std::runtime_error {
public:
    PaddingOverflowError(std::string node_id, const Rational& min_width)
        : std::runtime_error("interval too small for epsilon padding" +
                             (node_id.empty() ? std::string() : " at node " + node_id) +
                             "; needs width > " + min_width.str()),
          node_id_(std::move(node_id)),
          min_width_(min_width) {}

    const std::string& node_id() const { return node_id_; }
    const Rational& min_width() const { return min_width_; }

private:
    std::string node_id_;
    Rational min_width_;
};

// Splits [l, r] into k children separated by exact epsilon gaps:
//   w   = (r - l - (k+1)*eps) / k
//   lo_i = l + (i-1)*w + i*eps
//   hi_i = l + i*w + i*eps
// With eps = 0 the children are exact k-ths of the parent.
std::vector<EventInterval> split_interval(const EventInterval& parent, std::size_t k,
                                          const EpsilonConfig& eps);

// Minimal ordered tree of event ids, used to lay out an outline on [0, 1].
struct EventTreeNode {
    std::string id;
    std::vector<EventTreeNode> children;
};

// Root gets [0, 1]; each node's children get split_interval(node, count, eps).
std::map<std::string, EventInterval> assign_intervals(const EventTreeNode& root,
                                                      const EpsilonConfig& eps);

// Pre -> (-inf, event.lo]; Post -> [event.hi, +inf).
ValidityInterval default_validity(const EventInterval& event, Direction d);

// The contradiction condition: with pre = (l1, r1] and post = [l2, r2),
// true iff l1 <= l2 <= r1 <= r2 (overlap on both checkpoints).
bool overlap_both_checkpoints(const ValidityInterval& pre, const ValidityInterval& post);

// The update condition between same-direction facts.
//   Post: existing [L, R), incoming [l, r)  ->  L <= l <= R <= r
//   Pre:  existing (l, r], incoming (L, R]  ->  l < R  and  R < r
bool update_overlap(const ValidityInterval& existing, const ValidityInterval& incoming);

enum class AllenRelation : std::uint8_t {
    Precedes,
    Meets,
    Overlaps,
    FinishedBy,
    Contains,
    Starts,
    Equals,
    StartedBy,
    During,
    Finishes,
    OverlappedBy,
    MetBy,
    PrecededBy,
};

const char* to_string(AllenRelation r);

// Classifies two non-degenerate intervals by endpoint order. Diagnostics and
// test plumbing only; the pipeline itself uses the checkpoint predicates.
AllenRelation allen_relation(const TimePoint& a_lo, const TimePoint& a_hi,
                             const TimePoint& b_lo, const TimePoint& b_hi);

}  // namespace facttrack
