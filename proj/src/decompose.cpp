#include "facttrack/decompose.hpp"

#include "facttrack/model_client.hpp"
#include "facttrack/scorer.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace facttrack {

const char* const kDecompositionPromptTemplate =
    "Deconstruct the given event point into atomic facts, considering facts valid "
    "until before the event event (pre-facts), facts valid starting after the event "
    "event (post-facts), and facts that remain valid throughout the event (static "
    "facts). For pre-facts, identify the conditions that are present before the "
    "event, but change as a result of it. For post-facts, identify the conditions "
    "that are valid after the event, which are essentially the transformed versions "
    "of the corresponding pre-facts. Static facts are the conditions that remain "
    "true throughout the event. Please be sure to present facts as assertive "
    "statements, rather than speculative or suggestive ones.\n\n"
    "event point: {event_point_text}\n\n"
    "Pre-Facts:\n[pre-facts]\n\n"
    "Post-Facts:\n[post-facts]\n\n"
    "Static Facts:\n[static facts]\n";

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Strips leading list markers: dashes, bullets, "1.", "2)", "[3]".
std::string strip_marker(const std::string& line) {
    std::string s = trim(line);
    std::size_t i = 0;
    while (i < s.size() && (s[i] == '-' || s[i] == '*')) ++i;
    if (i == 0) {
        std::size_t j = 0;
        if (j < s.size() && s[j] == '[') ++j;
        std::size_t digits = j;
        while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits])))
            ++digits;
        if (digits > j && digits < s.size() &&
            (s[digits] == '.' || s[digits] == ')' || s[digits] == ']')) {
            i = digits + 1;
        }
    }
    return trim(s.substr(i));
}

void dedupe(std::vector<std::string>& v) {
    std::vector<std::string> seen;
    std::vector<std::string> out;
    for (auto& s : v) {
        if (std::find(seen.begin(), seen.end(), s) == seen.end()) {
            seen.push_back(s);
            out.push_back(s);
        }
    }
    v = std::move(out);
}

std::string replace_slot(std::string tmpl, const std::string& slot,
                         const std::string& value) {
    auto pos = tmpl.find(slot);
    while (pos != std::string::npos) {
        tmpl.replace(pos, slot.size(), value);
        pos = tmpl.find(slot, pos + value.size());
    }
    return tmpl;
}

}  // namespace

Decomposition parse_decomposition(const std::string& raw) {
    Decomposition d;
    std::vector<std::string>* current = nullptr;
    int sections = 0;
    std::istringstream in(raw);
    std::string line;
    while (std::getline(in, line)) {
        std::string low = lower(trim(line));
        if (low.rfind("pre-facts", 0) == 0 || low.rfind("pre facts", 0) == 0) {
            current = &d.pre;
            ++sections;
            continue;
        }
        if (low.rfind("post-facts", 0) == 0 || low.rfind("post facts", 0) == 0) {
            current = &d.post;
            ++sections;
            continue;
        }
        if (low.rfind("static facts", 0) == 0 || low.rfind("static-facts", 0) == 0) {
            current = &d.statics;
            ++sections;
            continue;
        }
        if (!current) continue;
        std::string item = strip_marker(line);
        if (!item.empty()) current->push_back(std::move(item));
    }
    if (sections == 0)
        throw DecompositionError("no Pre-Facts/Post-Facts/Static Facts section found", raw);
    dedupe(d.pre);
    dedupe(d.post);
    dedupe(d.statics);
    return d;
}

std::string render_decomposition(const Decomposition& d) {
    std::ostringstream out;
    out << "Pre-Facts:\n";
    for (const auto& s : d.pre) out << "- " << s << "\n";
    out << "Post-Facts:\n";
    for (const auto& s : d.post) out << "- " << s << "\n";
    out << "Static Facts:\n";
    for (const auto& s : d.statics) out << "- " << s << "\n";
    return out.str();
}

Decomposition mock_decompose(const std::string& dsl_text) {
    Decomposition d;
    std::istringstream in(dsl_text);
    std::string clause;
    bool any = false;
    while (std::getline(in, clause, ';')) {
        std::string c = trim(clause);
        if (c.empty()) continue;
        auto space = c.find_first_of(" \t");
        std::string tag = space == std::string::npos ? c : c.substr(0, space);
        std::string rest = space == std::string::npos ? "" : trim(c.substr(space + 1));
        std::string name, value;
        if (!parse_dsl_fact(rest, name, value))
            throw DecompositionError("malformed DSL clause: \"" + c + "\"");
        if (tag == "PRE")
            d.pre.push_back(rest);
        else if (tag == "POST")
            d.post.push_back(rest);
        else if (tag == "STATIC")
            d.statics.push_back(rest);
        else
            throw DecompositionError("unknown DSL clause tag: \"" + tag + "\"");
        any = true;
    }
    if (!any) throw DecompositionError("no DSL clauses in: \"" + dsl_text + "\"");
    dedupe(d.pre);
    dedupe(d.post);
    dedupe(d.statics);
    return d;
}

std::string render_dsl(const Decomposition& d) {
    std::ostringstream out;
    bool first = true;
    auto emit = [&](const char* tag, const std::vector<std::string>& v) {
        for (const auto& s : v) {
            if (!first) out << "; ";
            out << tag << " " << s;
            first = false;
        }
    };
    emit("PRE", d.pre);
    emit("POST", d.post);
    emit("STATIC", d.statics);
    return out.str();
}

std::pair<std::vector<std::string>, std::vector<std::string>> expand_static(
    const Decomposition& d) {
    std::vector<std::string> pre = d.pre;
    std::vector<std::string> post = d.post;
    pre.insert(pre.end(), d.statics.begin(), d.statics.end());
    post.insert(post.end(), d.statics.begin(), d.statics.end());
    return {std::move(pre), std::move(post)};
}

Decomposition decompose_event(const std::string& event_text, ModelClient& client,
                              const DecomposerConfig& cfg) {
    if (event_text.empty())
        throw std::invalid_argument("decompose_event: empty event text");
    std::string prompt =
        replace_slot(cfg.prompt_template, "{event_point_text}", event_text);
    std::string last_raw;
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        // retry prompts carry an attempt marker so they miss the cache
        std::string p = attempt == 0
                            ? prompt
                            : prompt + "\n\n(retry " + std::to_string(attempt) + ")";
        last_raw = client.cached_complete(p);
        try {
            return parse_decomposition(last_raw);
        } catch (const DecompositionError&) {
        }
    }
    throw DecompositionError("decomposition unparseable after " +
                                 std::to_string(cfg.max_retries) + " attempts",
                             last_raw);
}

}  // namespace facttrack
