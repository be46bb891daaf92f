#include "facttrack/report.hpp"

#include <json.hpp>

namespace facttrack {

using Json = nlohmann::ordered_json;

namespace {

Direction direction_from(const std::string& s) {
    if (s == "pre") return Direction::Pre;
    if (s == "post") return Direction::Post;
    throw ReportError("bad direction: " + s);
}

}  // namespace

std::string render_report_json(const ContradictionReport& report) {
    Json doc;
    doc["schema"] = "facttrack-report-v1";
    doc["outline_id"] = report.outline_id;
    doc["scorer"] = report.scorer_id;
    doc["policy"] = report.policy;
    doc["insertion_order"] = report.insertion_order;
    doc["epsilon"] = report.epsilon;
    doc["thresholds"] = {
        {"filter_sim", report.thresholds.filter_sim},
        {"same_sim", report.thresholds.same_sim},
        {"contradict_update", report.thresholds.contradict_update},
        {"contradict_detect", report.thresholds.contradict_detect},
    };
    doc["config_hash"] = report.config_hash;
    doc["entries"] = Json::array();
    for (const auto& e : report.entries) {
        doc["entries"].push_back({
            {"step", e.step},
            {"event_new", e.event_new},
            {"event_existing", e.event_existing},
            {"fact_new", e.fact_new},
            {"fact_existing", e.fact_existing},
            {"dir_new", to_string(e.dir_new)},
            {"dir_existing", to_string(e.dir_existing)},
            {"interval_new", e.interval_new},
            {"interval_existing", e.interval_existing},
            {"contradiction_score", e.contradiction_score},
            {"similarity_score", e.similarity_score},
        });
    }
    doc["skips"] = Json::array();
    for (const auto& s : report.skips)
        doc["skips"].push_back({{"step", s.step}, {"event", s.event}, {"reason", s.reason}});
    if (report.doc_verdict) doc["doc_verdict"] = *report.doc_verdict;
    return doc.dump(2) + "\n";
}

ContradictionReport parse_report_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        throw ReportError(std::string("invalid report JSON: ") + e.what());
    }
    if (doc.value("schema", "") != "facttrack-report-v1")
        throw ReportError("missing or unknown report schema field");
    ContradictionReport r;
    try {
        r.outline_id = doc.value("outline_id", "");
        r.scorer_id = doc.value("scorer", "");
        r.policy = doc.value("policy", "");
        r.insertion_order = doc.value("insertion_order", "");
        r.epsilon = doc.value("epsilon", "");
        r.config_hash = doc.value("config_hash", "");
        if (doc.contains("thresholds")) {
            const auto& t = doc["thresholds"];
            r.thresholds.filter_sim = t.value("filter_sim", 0.5);
            r.thresholds.same_sim = t.value("same_sim", 0.95);
            r.thresholds.contradict_update = t.value("contradict_update", 0.8);
            r.thresholds.contradict_detect = t.value("contradict_detect", 0.2359);
        }
        for (const auto& e : doc.value("entries", Json::array())) {
            ReportEntry entry;
            entry.step = e.at("step").get<std::size_t>();
            entry.event_new = e.at("event_new").get<std::string>();
            entry.event_existing = e.at("event_existing").get<std::string>();
            entry.fact_new = e.at("fact_new").get<std::string>();
            entry.fact_existing = e.at("fact_existing").get<std::string>();
            entry.dir_new = direction_from(e.at("dir_new").get<std::string>());
            entry.dir_existing = direction_from(e.at("dir_existing").get<std::string>());
            entry.interval_new = e.at("interval_new").get<std::string>();
            entry.interval_existing = e.at("interval_existing").get<std::string>();
            entry.contradiction_score = e.at("contradiction_score").get<double>();
            entry.similarity_score = e.at("similarity_score").get<double>();
            r.entries.push_back(std::move(entry));
        }
        for (const auto& s : doc.value("skips", Json::array())) {
            r.skips.push_back({s.at("step").get<std::size_t>(),
                               s.at("event").get<std::string>(),
                               s.at("reason").get<std::string>()});
        }
        if (doc.contains("doc_verdict")) r.doc_verdict = doc["doc_verdict"].get<bool>();
    } catch (const Json::exception& e) {
        throw ReportError(std::string("report schema mismatch: ") + e.what());
    }
    return r;
}

}  // namespace facttrack
