#include "facttrack/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace facttrack {

using Json = nlohmann::ordered_json;

std::string render_gold_json(const GoldSpec& gold) {
    Json doc;
    doc["schema"] = "facttrack-gold-v1";
    doc["pairs"] = Json::array();
    for (const auto& p : gold.pairs) {
        doc["pairs"].push_back({
            {"event_a", p.event_a},
            {"event_b", p.event_b},
            {"fact_a", p.fact_a},
            {"fact_b", p.fact_b},
        });
    }
    return doc.dump(2) + "\n";
}

GoldSpec parse_gold_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        throw ReportError(std::string("invalid gold JSON: ") + e.what());
    }
    if (doc.value("schema", "") != "facttrack-gold-v1")
        throw ReportError("missing or unknown gold schema field");
    GoldSpec gold;
    try {
        for (const auto& p : doc.value("pairs", Json::array())) {
            gold.pairs.push_back({p.at("event_a").get<std::string>(),
                                  p.at("event_b").get<std::string>(),
                                  p.at("fact_a").get<std::string>(),
                                  p.at("fact_b").get<std::string>()});
        }
    } catch (const Json::exception& e) {
        throw ReportError(std::string("gold schema mismatch: ") + e.what());
    }
    return gold;
}

namespace {

// Lexicographic order on index vectors; for non-ancestor pairs this is
// timeline order of their (disjoint) intervals.
bool before(const std::vector<int>& a, const std::vector<int>& b) { return a < b; }

}  // namespace

SynthResult synth_outline(std::uint64_t seed, int depth, int branching, int planted,
                          int distractors) {
    if (depth < 1 || branching < 1)
        throw std::invalid_argument("synth_outline: depth and branching must be >= 1");
    if (planted < 0 || distractors < 0)
        throw std::invalid_argument("synth_outline: negative counts");

    // full tree of indices, level by level
    std::vector<std::string> ids;
    std::vector<std::vector<int>> id_vecs;
    std::vector<std::vector<int>> frontier{{}};
    for (int level = 0; level < depth; ++level) {
        std::vector<std::vector<int>> next;
        for (const auto& parent : frontier) {
            for (int j = 1; j <= branching; ++j) {
                auto idx = parent;
                idx.push_back(j);
                std::ostringstream s;
                for (std::size_t i = 0; i < idx.size(); ++i)
                    s << (i ? "." : "") << idx[i];
                ids.push_back(s.str());
                id_vecs.push_back(idx);
                next.push_back(idx);
            }
        }
        frontier = std::move(next);
    }

    // all ordered pairs (a earlier, b later) with neither an ancestor of the
    // other; these are exactly the plantable pairs
    std::vector<std::pair<std::size_t, std::size_t>> plantable;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = 0; j < ids.size(); ++j) {
            if (i == j) continue;
            if (is_ancestor(ids[i], ids[j]) || is_ancestor(ids[j], ids[i])) continue;
            if (before(id_vecs[i], id_vecs[j])) plantable.emplace_back(i, j);
        }
    }

    if (static_cast<std::size_t>(planted) > plantable.size())
        throw SynthError("cannot plant " + std::to_string(planted) +
                             " conflicts in a tree with " +
                             std::to_string(plantable.size()) + " plantable event pairs",
                         static_cast<int>(plantable.size()));

    std::mt19937_64 rng(seed);
    auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    // each event starts with a filler static fact on a fresh variable
    std::map<std::string, std::vector<std::string>> clauses;
    for (std::size_t i = 0; i < ids.size(); ++i)
        clauses[ids[i]].push_back("STATIC e" + std::to_string(i) + "=1");

    GoldSpec gold;
    int var = 0;

    // plants: distinct event pairs, fresh variable each
    auto pool = plantable;
    for (int p = 0; p < planted; ++p) {
        std::size_t at = pick(pool.size());
        auto [a, b] = pool[at];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
        std::string name = "v" + std::to_string(var++);
        std::string post_fact = name + "=1";
        std::string pre_fact = name + "=0";
        clauses[ids[a]].push_back("POST " + post_fact);
        clauses[ids[b]].push_back("PRE " + pre_fact);
        gold.pairs.push_back({ids[a], ids[b], post_fact, pre_fact});
    }

    // distractors cycle through three shapes, each failing one gate
    for (int d = 0; d < distractors && !plantable.empty(); ++d) {
        auto [a, b] = plantable[pick(plantable.size())];
        std::string name = "d" + std::to_string(var++);
        switch (d % 3) {
            case 0:
                // repeat: same value both times, contradiction score 0
                clauses[ids[a]].push_back("POST " + name + "=1");
                clauses[ids[b]].push_back("PRE " + name + "=1");
                break;
            case 1:
                // same-direction update chain, never compared by detection
                clauses[ids[a]].push_back("POST " + name + "=1");
                clauses[ids[b]].push_back("POST " + name + "=2");
                break;
            case 2:
                // cross pair in the wrong temporal order, checkpoint overlap fails
                clauses[ids[a]].push_back("PRE " + name + "=0");
                clauses[ids[b]].push_back("POST " + name + "=1");
                break;
        }
    }

    SynthResult result;
    result.outline.premise = "synthetic outline, seed " + std::to_string(seed);
    for (const auto& id : ids) {
        std::ostringstream text;
        const auto& cs = clauses[id];
        for (std::size_t i = 0; i < cs.size(); ++i) text << (i ? "; " : "") << cs[i];
        result.outline.events.push_back({id, text.str(), {}, {}, {}});
    }
    result.gold = std::move(gold);
    return result;
}

PrMetrics evaluate_report(const ContradictionReport& report, const GoldSpec& gold) {
    auto key = [](const std::string& a, const std::string& b) {
        return a < b ? a + "|" + b : b + "|" + a;
    };
    std::set<std::string> predicted;
    for (const auto& e : report.entries) predicted.insert(key(e.event_new, e.event_existing));
    std::set<std::string> truth;
    for (const auto& p : gold.pairs) truth.insert(key(p.event_a, p.event_b));

    std::size_t tp = 0;
    for (const auto& k : predicted)
        if (truth.count(k)) ++tp;

    PrMetrics m;
    if (predicted.empty())
        m.precision = truth.empty() ? 1.0 : 0.0;
    else
        m.precision = static_cast<double>(tp) / static_cast<double>(predicted.size());
    m.recall = truth.empty() ? 1.0 : static_cast<double>(tp) / static_cast<double>(truth.size());
    m.f1 = (m.precision + m.recall) > 0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

}  // namespace facttrack
