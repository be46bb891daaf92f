#include "facttrack/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"facttrack: time-aware fact tracking and contradiction detection"};
    app.require_subcommand(1);

    facttrack::CliOptions opts;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "JSON config file");
        cmd->add_option("--scorer", opts.scorer, "oracle | nli | fewshot")
            ->default_val("oracle");
        cmd->add_option("--decomposer", opts.decomposer, "dsl | model");
        cmd->add_option("--epsilon", opts.epsilon,
                        "sibling gap as an exact rational, e.g. 1/1000000");
        cmd->add_option("--filter-sim", opts.th_filter, "similarity filter threshold");
        cmd->add_option("--same-sim", opts.th_same, "same-fact similarity threshold");
        cmd->add_option("--contradict-update", opts.th_update,
                        "contradiction threshold for interval updates");
        cmd->add_option("--contradict-detect", opts.th_detect,
                        "contradiction threshold for detection");
        cmd->add_option("--order", opts.order, "insertion order: level | pre");
        cmd->add_option("--policy", opts.policy, "on contradiction: skip | update");
        cmd->add_option("--out", opts.out_path, "output path");
    };

    std::string outline_path, text_path, report_path, gold_path, premise, event_text;
    std::string synth_outline_out = "outline.json", synth_gold_out = "gold.json";
    bool pre_split = false;
    std::uint64_t seed = 0;
    int depth = 3, branching = 3, planted = 3, distractors = 10;

    auto* detect = app.add_subcommand("detect", "detect contradictions in an outline");
    detect->add_option("outline", outline_path, "outline file (JSON or text)")->required();
    add_common(detect);

    auto* doc = app.add_subcommand("doc-detect",
                                   "document mode: per-sentence events, binary verdict");
    doc->add_option("document", text_path, "plain-text document")->required();
    doc->add_flag("--pre-split", pre_split, "input is one sentence per line");
    add_common(doc);

    auto* synth = app.add_subcommand("synth", "generate a synthetic outline with gold");
    synth->add_option("--seed", seed, "generator seed")->default_val(0);
    synth->add_option("--depth", depth, "tree depth")->default_val(3);
    synth->add_option("--branching", branching, "children per node")->default_val(3);
    synth->add_option("--planted", planted, "planted conflicts")->default_val(3);
    synth->add_option("--distractors", distractors, "non-conflicting constructions")
        ->default_val(10);
    synth->add_option("--outline-out", synth_outline_out, "outline output path");
    synth->add_option("--gold-out", synth_gold_out, "gold output path");

    auto* eval = app.add_subcommand("eval", "score a report against a gold file");
    eval->add_option("report", report_path, "report JSON")->required();
    eval->add_option("gold", gold_path, "gold JSON")->required();

    auto* gen = app.add_subcommand("gen-outline", "generate an outline with a model");
    gen->add_option("premise", premise, "story premise")->required();
    gen->add_option("--depth", depth, "tree depth")->default_val(3);
    gen->add_option("--branching", branching, "children per node")->default_val(3);
    add_common(gen);

    auto* dec = app.add_subcommand("decompose", "decompose one event into atomic facts");
    dec->add_option("event", event_text, "event text")->required();
    add_common(dec);

    CLI11_PARSE(app, argc, argv);

    if (detect->parsed()) return facttrack::cmd_detect(outline_path, opts);
    if (doc->parsed()) return facttrack::cmd_doc_detect(text_path, opts, pre_split);
    if (synth->parsed())
        return facttrack::cmd_synth(seed, depth, branching, planted, distractors,
                                    synth_outline_out, synth_gold_out);
    if (eval->parsed()) return facttrack::cmd_eval(report_path, gold_path);
    if (gen->parsed()) return facttrack::cmd_gen_outline(premise, depth, branching, opts);
    if (dec->parsed()) return facttrack::cmd_decompose(event_text, opts);
    return facttrack::kExitInputError;
}
