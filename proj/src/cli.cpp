#include "facttrack/cli.hpp"

#include "facttrack/model_client.hpp"
#include "facttrack/remote_scorers.hpp"
#include "facttrack/synth.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

namespace facttrack {

using Json = nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

struct ResolvedConfig {
    PipelineConfig pipeline;
    std::string scorer_name = "oracle";
    std::string decomposer_name;  // dsl | model
    ClientConfig client;
    NliScorerConfig nli;
};

ResolvedConfig resolve_config(const CliOptions& opts) {
    ResolvedConfig rc;

    if (!opts.config_path.empty()) {
        Json cfg = Json::parse(read_file(opts.config_path));
        rc.scorer_name = cfg.value("scorer", rc.scorer_name);
        rc.decomposer_name = cfg.value("decomposer", rc.decomposer_name);
        if (cfg.contains("epsilon"))
            rc.pipeline.epsilon = parse_rational(cfg["epsilon"].get<std::string>());
        if (cfg.contains("thresholds")) {
            const auto& t = cfg["thresholds"];
            auto& th = rc.pipeline.thresholds;
            th.filter_sim = t.value("filter_sim", th.filter_sim);
            th.same_sim = t.value("same_sim", th.same_sim);
            th.contradict_update = t.value("contradict_update", th.contradict_update);
            th.contradict_detect = t.value("contradict_detect", th.contradict_detect);
        }
        if (cfg.value("order", "") == "pre") rc.pipeline.order = InsertionOrder::PreOrder;
        if (cfg.value("policy", "") == "update")
            rc.pipeline.policy = OnContradiction::RecordAndUpdate;
        if (cfg.contains("model")) {
            const auto& m = cfg["model"];
            rc.client.endpoint = m.value("endpoint", "");
            rc.client.model = m.value("model", rc.client.model);
            rc.client.temperature = m.value("temperature", 0.0);
            rc.client.api_key_env = m.value("api_key_env", rc.client.api_key_env);
            rc.client.cache_dir = m.value("cache_dir", "");
        }
        if (cfg.contains("nli")) {
            const auto& n = cfg["nli"];
            rc.nli.score_endpoint = n.value("score_endpoint", "");
            rc.nli.embed_endpoint = n.value("embed_endpoint", "");
            rc.nli.map_cosine = n.value("map_cosine", true);
        }
    }

    if (!opts.scorer.empty()) rc.scorer_name = opts.scorer;
    if (!opts.decomposer.empty()) rc.decomposer_name = opts.decomposer;
    if (rc.decomposer_name.empty())
        rc.decomposer_name = rc.scorer_name == "oracle" ? "dsl" : "model";
    if (!opts.epsilon.empty()) rc.pipeline.epsilon = parse_rational(opts.epsilon);
    auto& th = rc.pipeline.thresholds;
    if (opts.th_filter) th.filter_sim = *opts.th_filter;
    if (opts.th_same) th.same_sim = *opts.th_same;
    if (opts.th_update) th.contradict_update = *opts.th_update;
    if (opts.th_detect) th.contradict_detect = *opts.th_detect;
    if (opts.order == "pre") rc.pipeline.order = InsertionOrder::PreOrder;
    else if (opts.order == "level") rc.pipeline.order = InsertionOrder::LevelOrder;
    else if (!opts.order.empty()) throw std::runtime_error("unknown order: " + opts.order);
    if (opts.policy == "update") rc.pipeline.policy = OnContradiction::RecordAndUpdate;
    else if (opts.policy == "skip")
        rc.pipeline.policy = OnContradiction::RecordAndSkipUpdate;
    else if (!opts.policy.empty())
        throw std::runtime_error("unknown policy: " + opts.policy);
    return rc;
}

struct Engine {
    std::unique_ptr<FactScorer> scorer;
    std::shared_ptr<ModelClient> client;
    Decomposer decomposer;
};

Engine build_engine(const ResolvedConfig& rc) {
    Engine e;
    if (rc.scorer_name == "oracle") {
        e.scorer = oracle_scorer();
    } else if (rc.scorer_name == "nli") {
        if (rc.nli.score_endpoint.empty() || rc.nli.embed_endpoint.empty())
            throw std::runtime_error("nli scorer needs score_endpoint and embed_endpoint");
        e.scorer = nli_service_scorer(rc.nli);
    } else if (rc.scorer_name == "fewshot") {
        e.client = std::make_shared<ModelClient>(rc.client);
        e.scorer = fewshot_chat_scorer(e.client);
    } else {
        throw std::runtime_error("unknown scorer: " + rc.scorer_name);
    }

    if (rc.decomposer_name == "dsl") {
        e.decomposer = [](const std::string& text) { return mock_decompose(text); };
    } else if (rc.decomposer_name == "model") {
        if (!e.client) e.client = std::make_shared<ModelClient>(rc.client);
        auto client = e.client;
        e.decomposer = [client](const std::string& text) {
            return decompose_event(text, *client);
        };
    } else {
        throw std::runtime_error("unknown decomposer: " + rc.decomposer_name);
    }
    return e;
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ScoringError& e) {
        std::cerr << "scorer error: " << e.what() << "\n";
        return kExitScorerError;
    } catch (const ClientError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return kExitScorerError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace

std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        current.push_back(c);
        if (c == '.' || c == '!' || c == '?') {
            // swallow the punctuation run, split if whitespace (or end) follows
            while (i + 1 < text.size() &&
                   (text[i + 1] == '.' || text[i + 1] == '!' || text[i + 1] == '?'))
                current.push_back(text[++i]);
            if (i + 1 >= text.size() ||
                std::isspace(static_cast<unsigned char>(text[i + 1]))) {
                std::string s = current;
                std::size_t b = s.find_first_not_of(" \t\r\n");
                std::size_t e = s.find_last_not_of(" \t\r\n");
                if (b != std::string::npos) out.push_back(s.substr(b, e - b + 1));
                current.clear();
            }
        }
    }
    std::size_t b = current.find_first_not_of(" \t\r\n");
    if (b != std::string::npos)
        out.push_back(current.substr(b, current.find_last_not_of(" \t\r\n") - b + 1));
    return out;
}

int cmd_detect(const std::string& outline_path, const CliOptions& opts) {
    return run_guarded([&] {
        ResolvedConfig rc = resolve_config(opts);
        Outline outline = parse_outline_any(read_file(outline_path));
        Engine engine = build_engine(rc);
        ContradictionReport report =
            process_outline(outline, rc.pipeline, engine.decomposer, *engine.scorer);
        std::string out_path =
            opts.out_path.empty() ? outline_path + ".report.json" : opts.out_path;
        write_file(out_path, render_report_json(report));
        std::cout << report.entries.size() << " contradiction entr"
                  << (report.entries.size() == 1 ? "y" : "ies") << " -> " << out_path
                  << "\n";
        return kExitOk;
    });
}

int cmd_doc_detect(const std::string& text_path, const CliOptions& opts, bool pre_split) {
    return run_guarded([&] {
        ResolvedConfig rc = resolve_config(opts);
        std::string text = read_file(text_path);
        std::vector<std::string> sentences;
        if (pre_split) {
            std::istringstream in(text);
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (!line.empty()) sentences.push_back(line);
            }
        } else {
            sentences = split_sentences(text);
        }
        if (sentences.empty()) throw std::runtime_error("document is empty: " + text_path);
        Engine engine = build_engine(rc);
        ContradictionReport report =
            process_document(sentences, rc.pipeline, engine.decomposer, *engine.scorer);
        std::string out_path =
            opts.out_path.empty() ? text_path + ".report.json" : opts.out_path;
        write_file(out_path, render_report_json(report));
        std::cout << "verdict: " << (*report.doc_verdict ? "contradictory" : "consistent")
                  << " (" << report.entries.size() << " entries) -> " << out_path << "\n";
        return kExitOk;
    });
}

int cmd_synth(std::uint64_t seed, int depth, int branching, int planted, int distractors,
              const std::string& outline_out, const std::string& gold_out) {
    try {
        SynthResult result = synth_outline(seed, depth, branching, planted, distractors);
        write_file(outline_out, render_outline_json(result.outline));
        write_file(gold_out, render_gold_json(result.gold));
        std::cout << result.outline.events.size() << " events, " << result.gold.pairs.size()
                  << " planted pairs -> " << outline_out << ", " << gold_out << "\n";
        return kExitOk;
    } catch (const SynthError& e) {
        std::cerr << "error: " << e.what() << " (maximum feasible: " << e.max_feasible()
                  << ")\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_eval(const std::string& report_path, const std::string& gold_path) {
    try {
        ContradictionReport report = parse_report_json(read_file(report_path));
        GoldSpec gold = parse_gold_json(read_file(gold_path));
        PrMetrics m = evaluate_report(report, gold);
        std::printf("precision %.4f\nrecall %.4f\nf1 %.4f\n", m.precision, m.recall, m.f1);
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_gen_outline(const std::string& premise, int depth, int branching,
                    const CliOptions& opts) {
    return run_guarded([&] {
        ResolvedConfig rc = resolve_config(opts);
        ModelClient client(rc.client);
        Outline outline = generate_outline(premise, depth, branching, client);
        std::string out_path = opts.out_path.empty() ? "outline.json" : opts.out_path;
        write_file(out_path, render_outline_json(outline));
        std::cout << outline.events.size() << " events -> " << out_path << "\n";
        return kExitOk;
    });
}

int cmd_decompose(const std::string& event_text, const CliOptions& opts) {
    return run_guarded([&] {
        ResolvedConfig rc = resolve_config(opts);
        Decomposition d;
        if (rc.decomposer_name == "dsl") {
            d = mock_decompose(event_text);
        } else {
            ModelClient client(rc.client);
            d = decompose_event(event_text, client);
        }
        std::cout << render_decomposition(d);
        return kExitOk;
    });
}

}  // namespace facttrack
