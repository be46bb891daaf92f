#include "facttrack/timeline.hpp"

namespace facttrack {

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rational(num, den);
}

std::vector<EventInterval> split_interval(const EventInterval& parent, std::size_t k,
                                          const EpsilonConfig& eps) {
    if (k == 0) throw std::invalid_argument("split_interval: k must be >= 1");
    const Rational l = parent.lo;
    const Rational r = parent.hi;
    const Rational& e = eps.epsilon;
    const Rational min_width = Rational(k + 1) * e;
    if (e > 0 && r - l <= min_width) throw PaddingOverflowError("", min_width);

    const Rational w = (r - l - min_width) / Rational(k);
    std::vector<EventInterval> out;
    out.reserve(k);
    for (std::size_t i = 1; i <= k; ++i) {
        Rational lo = l + Rational(i - 1) * w + Rational(i) * e;
        Rational hi = l + Rational(i) * w + Rational(i) * e;
        out.emplace_back(std::move(lo), std::move(hi));
    }
    return out;
}

namespace {

void assign_rec(const EventTreeNode& node, const EventInterval& interval,
                const EpsilonConfig& eps, std::map<std::string, EventInterval>& out) {
    out.emplace(node.id, interval);
    if (node.children.empty()) return;
    std::vector<EventInterval> parts;
    try {
        parts = split_interval(interval, node.children.size(), eps);
    } catch (const PaddingOverflowError& err) {
        throw PaddingOverflowError(node.id, err.min_width());
    }
    for (std::size_t i = 0; i < node.children.size(); ++i)
        assign_rec(node.children[i], parts[i], eps, out);
}

}  // namespace

std::map<std::string, EventInterval> assign_intervals(const EventTreeNode& root,
                                                      const EpsilonConfig& eps) {
    std::map<std::string, EventInterval> out;
    assign_rec(root, EventInterval(Rational(0), Rational(1)), eps, out);
    return out;
}

ValidityInterval default_validity(const EventInterval& event, Direction d) {
    if (d == Direction::Pre)
        return ValidityInterval(Direction::Pre, TimePoint::neg_inf(),
                                TimePoint::finite(event.lo));
    return ValidityInterval(Direction::Post, TimePoint::finite(event.hi),
                            TimePoint::pos_inf());
}

bool overlap_both_checkpoints(const ValidityInterval& pre, const ValidityInterval& post) {
    if (pre.direction != Direction::Pre || post.direction != Direction::Post)
        throw std::invalid_argument("overlap_both_checkpoints: direction mismatch");
    const TimePoint& l1 = pre.lo;
    const TimePoint& r1 = pre.hi;
    const TimePoint& l2 = post.lo;
    const TimePoint& r2 = post.hi;
    return l1 <= l2 && l2 <= r1 && r1 <= r2;
}

bool update_overlap(const ValidityInterval& existing, const ValidityInterval& incoming) {
    if (existing.direction != incoming.direction)
        throw std::invalid_argument("update_overlap: direction mismatch");
    if (existing.direction == Direction::Post) {
        // existing [L, R), incoming [l, r): L <= l <= R <= r
        return existing.lo <= incoming.lo && incoming.lo <= existing.hi &&
               existing.hi <= incoming.hi;
    }
    // existing (l, r], incoming (L, R]: l < R and R < r
    return existing.lo < incoming.hi && incoming.hi < existing.hi;
}

const char* to_string(AllenRelation r) {
    switch (r) {
        case AllenRelation::Precedes: return "precedes";
        case AllenRelation::Meets: return "meets";
        case AllenRelation::Overlaps: return "overlaps";
        case AllenRelation::FinishedBy: return "finished-by";
        case AllenRelation::Contains: return "contains";
        case AllenRelation::Starts: return "starts";
        case AllenRelation::Equals: return "equals";
        case AllenRelation::StartedBy: return "started-by";
        case AllenRelation::During: return "during";
        case AllenRelation::Finishes: return "finishes";
        case AllenRelation::OverlappedBy: return "overlapped-by";
        case AllenRelation::MetBy: return "met-by";
        case AllenRelation::PrecededBy: return "preceded-by";
    }
    return "?";
}

AllenRelation allen_relation(const TimePoint& a_lo, const TimePoint& a_hi,
                             const TimePoint& b_lo, const TimePoint& b_hi) {
    if (!(a_lo < a_hi) || !(b_lo < b_hi))
        throw std::invalid_argument("allen_relation: degenerate interval");
    if (a_hi < b_lo) return AllenRelation::Precedes;
    if (b_hi < a_lo) return AllenRelation::PrecededBy;
    if (a_hi == b_lo) return AllenRelation::Meets;
    if (b_hi == a_lo) return AllenRelation::MetBy;
    if (a_lo == b_lo) {
        if (a_hi == b_hi) return AllenRelation::Equals;
        return a_hi < b_hi ? AllenRelation::Starts : AllenRelation::StartedBy;
    }
    if (a_hi == b_hi)
        return a_lo < b_lo ? AllenRelation::FinishedBy : AllenRelation::Finishes;
    if (a_lo < b_lo)
        return b_hi < a_hi ? AllenRelation::Contains : AllenRelation::Overlaps;
    return a_hi < b_hi ? AllenRelation::During : AllenRelation::OverlappedBy;
}

}  // namespace facttrack
