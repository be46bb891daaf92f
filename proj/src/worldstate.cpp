#include "facttrack/worldstate.hpp"

#include <algorithm>

namespace facttrack {

namespace {

// Scorer argument order is (chronologically earlier text, later text),
// ordering by checkpoint with the existing fact first on ties.
TextPair oriented_pair(const AtomicFact& existing, const AtomicFact& incoming) {
    if (incoming.validity.checkpoint() < existing.validity.checkpoint())
        return {incoming.text, existing.text};
    return {existing.text, incoming.text};
}

}  // namespace

ValidityInterval determine_validity(const std::string& text, Direction d,
                                    const EventInterval& event, const WorldState& world,
                                    FactScorer& scorer, const ScorerThresholds& th) {
    ValidityInterval result = default_validity(event, d);
    const auto& stored = world.facts(d);

    std::vector<const AtomicFact*> scan;
    scan.reserve(stored.size());
    if (d == Direction::Pre) {
        const TimePoint& right = result.hi;
        for (const auto& f : stored)
            if (f.validity.hi < right) scan.push_back(&f);
        std::sort(scan.begin(), scan.end(), [](const AtomicFact* a, const AtomicFact* b) {
            if (a->validity.hi != b->validity.hi) return b->validity.hi < a->validity.hi;
            return a->id < b->id;
        });
        for (const AtomicFact* f : scan) {
            // stored fact ends before the new one begins, so stored is earlier
            const std::string& earlier = f->text;
            if (is_same(earlier, text, scorer, th) ||
                (passes_filter(earlier, text, scorer, th) &&
                 contradicts_for_update(earlier, text, scorer, th))) {
                result.lo = f->validity.hi;
                break;
            }
        }
    } else {
        const TimePoint& left = result.lo;
        for (const auto& f : stored)
            if (left < f.validity.lo) scan.push_back(&f);
        std::sort(scan.begin(), scan.end(), [](const AtomicFact* a, const AtomicFact* b) {
            if (a->validity.lo != b->validity.lo) return a->validity.lo < b->validity.lo;
            return a->id < b->id;
        });
        for (const AtomicFact* f : scan) {
            const std::string& later = f->text;
            if (is_same(text, later, scorer, th) ||
                (passes_filter(text, later, scorer, th) &&
                 contradicts_for_update(text, later, scorer, th))) {
                result.hi = f->validity.lo;
                break;
            }
        }
    }
    return result;
}

std::vector<ContradictionHit> detect_contradictions(const AtomicFact& fact,
                                                    const WorldState& world,
                                                    FactScorer& scorer,
                                                    const ScorerThresholds& th) {
    const Direction opposite =
        fact.direction == Direction::Pre ? Direction::Post : Direction::Pre;
    const auto& stored = world.facts(opposite);

    // Gather interval-overlapping candidates, then score in two batched
    // passes (filter, then contradiction on the survivors).
    std::vector<const AtomicFact*> candidates;
    std::vector<TextPair> pairs;
    for (const auto& f : stored) {
        const ValidityInterval& pre =
            fact.direction == Direction::Pre ? fact.validity : f.validity;
        const ValidityInterval& post =
            fact.direction == Direction::Pre ? f.validity : fact.validity;
        if (!overlap_both_checkpoints(pre, post)) continue;
        candidates.push_back(&f);
        // the post-side fact begins no later than the pre-side checkpoint
        const std::string& post_text =
            fact.direction == Direction::Pre ? f.text : fact.text;
        const std::string& pre_text =
            fact.direction == Direction::Pre ? fact.text : f.text;
        pairs.emplace_back(post_text, pre_text);
    }

    std::vector<double> sims = scorer.similarity_batch(pairs);
    std::vector<std::size_t> kept;
    std::vector<TextPair> kept_pairs;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (sims[i] > th.filter_sim) {
            kept.push_back(i);
            kept_pairs.push_back(pairs[i]);
        }
    }
    std::vector<double> scores = scorer.contradiction_batch(kept_pairs);

    std::vector<ContradictionHit> hits;
    for (std::size_t j = 0; j < kept.size(); ++j) {
        if (scores[j] > th.contradict_detect) {
            std::size_t i = kept[j];
            hits.push_back({fact, *candidates[i], scores[j], sims[i]});
        }
    }
    return hits;
}

std::vector<ContradictionHit> detect_contradictions_reference(const AtomicFact& fact,
                                                              const WorldState& world,
                                                              FactScorer& scorer,
                                                              const ScorerThresholds& th) {
    const Direction opposite =
        fact.direction == Direction::Pre ? Direction::Post : Direction::Pre;
    std::vector<ContradictionHit> hits;
    for (const auto& f : world.facts(opposite)) {
        const ValidityInterval& pre =
            fact.direction == Direction::Pre ? fact.validity : f.validity;
        const ValidityInterval& post =
            fact.direction == Direction::Pre ? f.validity : fact.validity;
        if (!overlap_both_checkpoints(pre, post)) continue;
        const std::string& post_text =
            fact.direction == Direction::Pre ? f.text : fact.text;
        const std::string& pre_text =
            fact.direction == Direction::Pre ? fact.text : f.text;
        double sim = scorer.similarity(post_text, pre_text);
        if (!(sim > th.filter_sim)) continue;
        double score = scorer.contradiction(post_text, pre_text);
        if (!(score > th.contradict_detect)) continue;
        hits.push_back({fact, f, score, sim});
    }
    return hits;
}

void update_world(AtomicFact fact, WorldState& world, FactScorer& scorer,
                  const ScorerThresholds& th) {
    auto& stored = world.facts(fact.direction);

    std::vector<AtomicFact*> order;
    order.reserve(stored.size());
    for (auto& f : stored) order.push_back(&f);
    if (fact.direction == Direction::Pre) {
        std::sort(order.begin(), order.end(), [](const AtomicFact* a, const AtomicFact* b) {
            if (a->validity.lo != b->validity.lo) return a->validity.lo < b->validity.lo;
            return a->id < b->id;
        });
    } else {
        std::sort(order.begin(), order.end(), [](const AtomicFact* a, const AtomicFact* b) {
            if (a->validity.hi != b->validity.hi) return b->validity.hi < a->validity.hi;
            return a->id < b->id;
        });
    }

    std::vector<std::int64_t> dead;
    for (AtomicFact* f : order) {
        if (!update_overlap(f->validity, fact.validity)) continue;
        TextPair p = oriented_pair(*f, fact);
        if (is_same(p.first, p.second, scorer, th)) {
            // a Same match adjusts the new fact's own boundary (a fact the
            // store already covers shrinks to nothing and is dropped below)
            if (fact.direction == Direction::Pre)
                fact.validity.lo = f->validity.hi;
            else
                fact.validity.hi = f->validity.lo;
        }
        if (passes_filter(p.first, p.second, scorer, th) &&
            contradicts_for_update(p.first, p.second, scorer, th)) {
            // truncate the stored fact at the new fact's checkpoint
            if (fact.direction == Direction::Pre)
                f->validity.lo = fact.validity.hi;
            else
                f->validity.hi = fact.validity.lo;
            if (!(f->validity.lo < f->validity.hi)) dead.push_back(f->id);
        }
    }

    if (!dead.empty()) {
        std::erase_if(stored, [&](const AtomicFact& f) {
            return std::find(dead.begin(), dead.end(), f.id) != dead.end();
        });
    }

    if (fact.validity.lo < fact.validity.hi) {
        fact.id = world.take_id();
        stored.push_back(std::move(fact));
    }
}

std::vector<AtomicFact> snapshot_at(const WorldState& world, const TimePoint& t) {
    if (!t.is_finite()) throw std::invalid_argument("snapshot_at: t must be finite");
    std::vector<AtomicFact> out;
    for (const auto& f : world.pre_facts())
        if (f.validity.contains(t)) out.push_back(f);
    for (const auto& f : world.post_facts())
        if (f.validity.contains(t)) out.push_back(f);
    return out;
}

}  // namespace facttrack
