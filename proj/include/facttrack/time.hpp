#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace facttrack {

// Exact rational arithmetic everywhere on the timeline. Boundary comparisons
// at shared checkpoints must be exact equality, which floating point cannot
// guarantee.
using Rational = boost::multiprecision::cpp_rational;

enum class Direction : std::uint8_t { Pre, Post };

inline const char* to_string(Direction d) {
    return d == Direction::Pre ? "pre" : "post";
}

// A point on the narration timeline: -inf, an exact rational, or +inf.
class TimePoint {
public:
    enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

    TimePoint() : kind_(Kind::Finite), value_(0) {}

    static TimePoint neg_inf() { return TimePoint(Kind::NegInf, 0); }
    static TimePoint pos_inf() { return TimePoint(Kind::PosInf, 0); }
    static TimePoint finite(Rational v) { return TimePoint(Kind::Finite, std::move(v)); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }

    const Rational& value() const {
        if (!is_finite()) throw std::logic_error("TimePoint: value() on infinity");
        return value_;
    }

    friend bool operator==(const TimePoint& a, const TimePoint& b) {
        if (a.kind_ != b.kind_) return false;
        if (a.kind_ != Kind::Finite) return true;
        return a.value_ == b.value_;
    }
    friend bool operator!=(const TimePoint& a, const TimePoint& b) { return !(a == b); }
    friend bool operator<(const TimePoint& a, const TimePoint& b) {
        if (a.kind_ == Kind::NegInf) return b.kind_ != Kind::NegInf;
        if (a.kind_ == Kind::PosInf) return false;
        if (b.kind_ == Kind::PosInf) return true;
        if (b.kind_ == Kind::NegInf) return false;
        return a.value_ < b.value_;
    }
    friend bool operator>(const TimePoint& a, const TimePoint& b) { return b < a; }
    friend bool operator<=(const TimePoint& a, const TimePoint& b) { return !(b < a); }
    friend bool operator>=(const TimePoint& a, const TimePoint& b) { return !(a < b); }

    std::string str() const {
        switch (kind_) {
            case Kind::NegInf: return "-inf";
            case Kind::PosInf: return "+inf";
            default: return value_.str();
        }
    }

private:
    TimePoint(Kind k, Rational v) : kind_(k), value_(std::move(v)) {}

    Kind kind_;
    Rational value_;
};

// A finite segment [lo, hi] of the narration timeline assigned to an event.
struct EventInterval {
    Rational lo;
    Rational hi;

    EventInterval() = default;
    EventInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("EventInterval: lo > hi");
    }

    Rational width() const { return hi - lo; }

    friend bool operator==(const EventInterval& a, const EventInterval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }

    std::string str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }
};

// The time span over which a fact holds. Pre-facts are (lo, hi] with hi
// finite; post-facts are [lo, hi) with lo finite. Zero-width intervals are
// never stored.
struct ValidityInterval {
    Direction direction = Direction::Pre;
    TimePoint lo;
    TimePoint hi;

    ValidityInterval() = default;
    ValidityInterval(Direction d, TimePoint l, TimePoint h)
        : direction(d), lo(std::move(l)), hi(std::move(h)) {
        if (!(lo < hi)) throw std::invalid_argument("ValidityInterval: lo must be < hi");
        if (d == Direction::Pre && !hi.is_finite())
            throw std::invalid_argument("ValidityInterval: pre-fact needs finite hi");
        if (d == Direction::Post && !lo.is_finite())
            throw std::invalid_argument("ValidityInterval: post-fact needs finite lo");
    }

    // The event boundary where the fact begins: pre -> right end, post -> left end.
    const TimePoint& checkpoint() const {
        return direction == Direction::Pre ? hi : lo;
    }

    bool contains(const TimePoint& t) const {
        if (direction == Direction::Pre) return lo < t && t <= hi;
        return lo <= t && t < hi;
    }

    friend bool operator==(const ValidityInterval& a, const ValidityInterval& b) {
        return a.direction == b.direction && a.lo == b.lo && a.hi == b.hi;
    }

    std::string str() const {
        if (direction == Direction::Pre)
            return "(" + lo.str() + ", " + hi.str() + "]";
        return "[" + lo.str() + ", " + hi.str() + ")";
    }
};

struct EpsilonConfig {
    Rational epsilon{1, 1000000};

    EpsilonConfig() = default;
    explicit EpsilonConfig(Rational e) : epsilon(std::move(e)) {
        if (epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");
    }
};

// Parses "p/q" or "p" into an exact rational.
Rational parse_rational(const std::string& s);

}  // namespace facttrack
