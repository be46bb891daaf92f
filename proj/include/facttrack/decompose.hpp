#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace facttrack {

class ModelClient;

// One event's worth of directional statements.
struct Decomposition {
    std::vector<std::string> pre;
    std::vector<std::string> post;
    std::vector<std::string> statics;
};

class DecompositionError : public std::runtime_error {
public:
    DecompositionError(const std::string& what, std::string raw_output = {})
        : std::runtime_error(what), raw_output_(std::move(raw_output)) {}
    const std::string& raw_output() const { return raw_output_; }

private:
    std::string raw_output_;
};

extern const char* const kDecompositionPromptTemplate;

struct DecomposerConfig {
    int max_retries = 3;
    std::string prompt_template = kDecompositionPromptTemplate;
};

// Parses model output with "Pre-Facts:" / "Post-Facts:" / "Static Facts:"
// headers (any order, case-insensitive), stripping list markers. Throws
// DecompositionError when no section header is found. Statements are
// deduplicated within each section.
Decomposition parse_decomposition(const std::string& raw);

// Renders a Decomposition in the same answer format parse_decomposition
// accepts.
std::string render_decomposition(const Decomposition& d);

// Deterministic test decomposer over the micro-DSL: semicolon-separated
// clauses "PRE name=value", "POST name=value", "STATIC name=value".
Decomposition mock_decompose(const std::string& dsl_text);

std::string render_dsl(const Decomposition& d);

// Folds static facts into both directions: (pre ++ static, post ++ static).
std::pair<std::vector<std::string>, std::vector<std::string>> expand_static(
    const Decomposition& d);

// Prompts the model at temperature 0 and parses the sections, retrying on
// parse failure up to cfg.max_retries.
Decomposition decompose_event(const std::string& event_text, ModelClient& client,
                              const DecomposerConfig& cfg = {});

// Pipeline-facing decomposer hook; mock_decompose and decompose_event both
// fit behind it.
using Decomposer = std::function<Decomposition(const std::string&)>;

}  // namespace facttrack
