#include "facttrack/scorer.hpp"

#include <cctype>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace facttrack {

std::vector<double> FactScorer::similarity_batch(const std::vector<TextPair>& pairs) {
    std::vector<double> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out[i] = similarity(pairs[i].first, pairs[i].second);
    return out;
}

std::vector<double> FactScorer::contradiction_batch(const std::vector<TextPair>& pairs) {
    std::vector<double> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out[i] = contradiction(pairs[i].first, pairs[i].second);
    return out;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return !std::isdigit(static_cast<unsigned char>(s[0]));
}

class OracleScorer final : public FactScorer {
public:
    double similarity(const std::string& a, const std::string& b) override {
        std::string na, va, nb, vb;
        if (!parse_dsl_fact(a, na, va) || !parse_dsl_fact(b, nb, vb)) return 0.0;
        return na == nb ? 1.0 : 0.0;
    }

    double contradiction(const std::string& a, const std::string& b) override {
        std::string na, va, nb, vb;
        if (!parse_dsl_fact(a, na, va) || !parse_dsl_fact(b, nb, vb)) return 0.0;
        return (na == nb && va != vb) ? 1.0 : 0.0;
    }

    std::vector<double> similarity_batch(const std::vector<TextPair>& pairs) override {
        std::vector<double> out(pairs.size());
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(pairs.size()); ++i)
            out[i] = similarity(pairs[i].first, pairs[i].second);
        return out;
    }

    std::vector<double> contradiction_batch(const std::vector<TextPair>& pairs) override {
        std::vector<double> out(pairs.size());
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(pairs.size()); ++i)
            out[i] = contradiction(pairs[i].first, pairs[i].second);
        return out;
    }

    std::string id() const override { return "oracle"; }
};

}  // namespace

bool parse_dsl_fact(const std::string& text, std::string& name, std::string& value) {
    auto eq = text.find('=');
    if (eq == std::string::npos) return false;
    std::string n = trim(text.substr(0, eq));
    std::string v = trim(text.substr(eq + 1));
    if (!is_identifier(n) || v.empty()) return false;
    if (v.find('=') != std::string::npos || v.find(' ') != std::string::npos) return false;
    name = std::move(n);
    value = std::move(v);
    return true;
}

std::unique_ptr<FactScorer> oracle_scorer() { return std::make_unique<OracleScorer>(); }

// All four predicates are strict "greater than".
bool passes_filter(const std::string& a, const std::string& b, FactScorer& scorer,
                   const ScorerThresholds& th) {
    return scorer.similarity(a, b) > th.filter_sim;
}

bool is_same(const std::string& a, const std::string& b, FactScorer& scorer,
             const ScorerThresholds& th) {
    return scorer.similarity(a, b) > th.same_sim;
}

bool contradicts_for_update(const std::string& a, const std::string& b, FactScorer& scorer,
                            const ScorerThresholds& th) {
    return scorer.contradiction(a, b) > th.contradict_update;
}

bool contradicts_for_detect(const std::string& a, const std::string& b, FactScorer& scorer,
                            const ScorerThresholds& th) {
    return scorer.contradiction(a, b) > th.contradict_detect;
}

}  // namespace facttrack
