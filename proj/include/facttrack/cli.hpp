#pragma once

#include "facttrack/pipeline.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace facttrack {

// Exit-code contract: 0 success, 2 I/O or parse errors, 3 scorer/transport
// errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitScorerError = 3;

struct CliOptions {
    std::string config_path;
    std::string scorer = "oracle";  // oracle | nli | fewshot
    std::string decomposer;         // dsl | model; default follows the scorer
    std::string epsilon;            // exact rational, e.g. "1/1000000"
    std::optional<double> th_filter;
    std::optional<double> th_same;
    std::optional<double> th_update;
    std::optional<double> th_detect;
    std::string order;   // level | pre
    std::string policy;  // skip | update
    std::string out_path;
    std::uint64_t seed = 0;
};

int cmd_detect(const std::string& outline_path, const CliOptions& opts);
int cmd_doc_detect(const std::string& text_path, const CliOptions& opts, bool pre_split);
int cmd_synth(std::uint64_t seed, int depth, int branching, int planted, int distractors,
              const std::string& outline_out, const std::string& gold_out);
int cmd_eval(const std::string& report_path, const std::string& gold_path);
int cmd_gen_outline(const std::string& premise, int depth, int branching,
                    const CliOptions& opts);
int cmd_decompose(const std::string& event_text, const CliOptions& opts);

// Sentence splitter used by document mode: breaks on '.', '!' or '?' runs
// followed by whitespace.
std::vector<std::string> split_sentences(const std::string& text);

}  // namespace facttrack
