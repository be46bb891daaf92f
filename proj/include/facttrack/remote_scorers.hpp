#pragma once

#include "facttrack/scorer.hpp"

#include <memory>
#include <string>

namespace facttrack {

class ModelClient;

struct NliScorerConfig {
    std::string score_endpoint;  // full URL, e.g. http://localhost:8111/score
    std::string embed_endpoint;  // full URL, e.g. http://localhost:8111/embed
    int max_retries = 3;
    // Cosine similarity is affinely mapped from [-1, 1] to [0, 1] so the
    // default 0.5/0.95 similarity thresholds apply on a [0, 1] scale.
    bool map_cosine = true;
};

// Scorer backed by an NLI scoring service and an embedding service.
// Wire contract (see docs/protocol.md):
//   score: request {"pairs": [{"premise": p, "hypothesis": h}, ...]}
//          response {"contradiction": [p0, p1, ...]} in pair order
//   embed: request {"texts": [t0, ...]}
//          response {"embeddings": [[f, ...], ...]} of equal-length vectors
std::unique_ptr<FactScorer> nli_service_scorer(NliScorerConfig cfg);

extern const char* const kFewshotContradictionPrompt;

// Scorer that asks a chat model the few-shot contradiction question and maps
// the Yes/No answer to a hard 1/0 score. Similarity is always 1 (this scorer
// does not filter). Unparseable answers after the client's retry budget raise
// ScoringError carrying the raw output.
std::unique_ptr<FactScorer> fewshot_chat_scorer(
    std::shared_ptr<ModelClient> client,
    std::string prompt_template = kFewshotContradictionPrompt, int max_retries = 3);

}  // namespace facttrack
