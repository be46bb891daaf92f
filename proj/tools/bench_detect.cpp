// Compares the batched contradiction-detection path against the serial
// quadratic reference on a large synthetic world.

#include "facttrack/hash.hpp"
#include "facttrack/scorer.hpp"
#include "facttrack/worldstate.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

using namespace facttrack;

namespace {

// Oracle semantics with per-pair work comparable to a small local model call,
// so the batched path has something to parallelize.
class SlowOracle : public FactScorer {
public:
    double similarity(const std::string& a, const std::string& b) override {
        burn(a, b);
        return inner_->similarity(a, b);
    }
    double contradiction(const std::string& a, const std::string& b) override {
        burn(a, b);
        return inner_->contradiction(a, b);
    }
    std::vector<double> similarity_batch(const std::vector<TextPair>& pairs) override {
        std::vector<double> out(pairs.size());
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(pairs.size()); ++i)
            out[i] = similarity(pairs[i].first, pairs[i].second);
        return out;
    }
    std::vector<double> contradiction_batch(const std::vector<TextPair>& pairs) override {
        std::vector<double> out(pairs.size());
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(pairs.size()); ++i)
            out[i] = contradiction(pairs[i].first, pairs[i].second);
        return out;
    }
    std::string id() const override { return "slow-oracle"; }

private:
    static void burn(const std::string& a, const std::string& b) {
        std::string h = a + "|" + b;
        for (int i = 0; i < 40; ++i) h = sha256_hex(h);
    }
    std::unique_ptr<FactScorer> inner_ = oracle_scorer();
};

WorldState make_world(std::size_t n_facts, std::mt19937_64& rng) {
    WorldState world;
    for (std::size_t i = 0; i < n_facts; ++i) {
        AtomicFact f;
        f.direction = rng() % 2 == 0 ? Direction::Pre : Direction::Post;
        f.text = "v" + std::to_string(rng() % 50) + "=" + std::to_string(rng() % 3);
        Rational a(static_cast<long>(rng() % 1000), 1000);
        if (f.direction == Direction::Pre)
            f.validity = ValidityInterval(Direction::Pre, TimePoint::neg_inf(),
                                          TimePoint::finite(a));
        else
            f.validity = ValidityInterval(Direction::Post, TimePoint::finite(a),
                                          TimePoint::pos_inf());
        f.source_event = "1";
        f.id = world.take_id();
        world.facts(f.direction).push_back(std::move(f));
    }
    return world;
}

template <typename F>
double time_ms(F&& fn, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n = argc > 1 ? std::stoul(argv[1]) : 20000;
    int reps = argc > 2 ? std::stoi(argv[2]) : 20;

    std::mt19937_64 rng(42);
    WorldState world = make_world(n, rng);
    SlowOracle scorer_obj;
    FactScorer& scorer = scorer_obj;
    ScorerThresholds th;

    AtomicFact probe;
    probe.direction = Direction::Pre;
    probe.text = "v1=9";
    probe.validity =
        ValidityInterval(Direction::Pre, TimePoint::neg_inf(), TimePoint::finite(Rational(1, 2)));
    probe.source_event = "2";

    std::size_t hits_batched = 0, hits_serial = 0;
    double batched = time_ms(
        [&] { hits_batched = detect_contradictions(probe, world, scorer, th).size(); },
        reps);
    double serial = time_ms(
        [&] {
            hits_serial =
                detect_contradictions_reference(probe, world, scorer, th).size();
        },
        reps);

    std::printf("world: %zu facts, probe hits: batched=%zu serial=%zu\n", n, hits_batched,
                hits_serial);
    std::printf("batched  %8.3f ms/op\n", batched);
    std::printf("serial   %8.3f ms/op\n", serial);
    std::printf("speedup  %8.2fx\n", serial / batched);
    return hits_batched == hits_serial ? 0 : 1;
}
