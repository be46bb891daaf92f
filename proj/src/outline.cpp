#include "facttrack/outline.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace facttrack {

using Json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string parent_index(const std::string& index) {
    auto dot = index.rfind('.');
    return dot == std::string::npos ? std::string() : index.substr(0, dot);
}

}  // namespace

std::vector<int> parse_index(const std::string& index) {
    if (index.empty()) throw OutlineError("empty event index");
    std::vector<int> out;
    std::istringstream in(index);
    std::string part;
    while (std::getline(in, part, '.')) {
        if (part.empty() || !std::all_of(part.begin(), part.end(), [](unsigned char c) {
                return std::isdigit(c);
            }))
            throw OutlineError("malformed event index: \"" + index + "\"");
        out.push_back(std::stoi(part));
    }
    return out;
}

bool is_ancestor(const std::string& a, const std::string& b) {
    return b.size() > a.size() + 1 && b.compare(0, a.size(), a) == 0 &&
           b[a.size()] == '.';
}

void validate_outline(const Outline& outline) {
    if (outline.events.empty()) throw OutlineError("outline has no events");
    std::set<std::string> seen;
    for (const auto& ev : outline.events) {
        parse_index(ev.index);
        if (!seen.insert(ev.index).second)
            throw OutlineError("duplicate event index: " + ev.index);
        if (ev.main_event.empty())
            throw OutlineError("event " + ev.index + " has empty main event");
    }
    for (const auto& ev : outline.events) {
        std::string parent = parent_index(ev.index);
        if (!parent.empty() && !seen.count(parent))
            throw OutlineError("event " + ev.index + " has no parent " + parent);
    }
}

EventTreeNode outline_tree(const Outline& outline) {
    std::map<std::string, std::vector<std::string>> children;
    for (const auto& ev : outline.events)
        children[parent_index(ev.index)].push_back(ev.index);
    for (auto& [_, v] : children) {
        std::sort(v.begin(), v.end(), [](const std::string& a, const std::string& b) {
            return parse_index(a) < parse_index(b);
        });
    }
    auto build = [&](auto&& self, const std::string& id) -> EventTreeNode {
        EventTreeNode node{id, {}};
        auto it = children.find(id);
        if (it != children.end())
            for (const auto& c : it->second) node.children.push_back(self(self, c));
        return node;
    };
    return build(build, "");
}

std::vector<std::string> level_order(const Outline& outline) {
    std::vector<std::string> ids;
    for (const auto& ev : outline.events) ids.push_back(ev.index);
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
        auto ia = parse_index(a), ib = parse_index(b);
        if (ia.size() != ib.size()) return ia.size() < ib.size();
        return ia < ib;
    });
    return ids;
}

std::vector<std::string> pre_order(const Outline& outline) {
    std::vector<std::string> out;
    auto walk = [&](auto&& self, const EventTreeNode& node) -> void {
        if (!node.id.empty()) out.push_back(node.id);
        for (const auto& c : node.children) self(self, c);
    };
    walk(walk, outline_tree(outline));
    return out;
}

const OutlineEvent& event_by_index(const Outline& outline, const std::string& index) {
    for (const auto& ev : outline.events)
        if (ev.index == index) return ev;
    throw OutlineError("no event with index " + index);
}

Outline parse_outline_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        throw OutlineError(std::string("invalid outline JSON: ") + e.what());
    }
    if (doc.value("schema", "") != "facttrack-outline-v1")
        throw OutlineError("missing or unknown outline schema field");
    Outline out;
    out.premise = doc.value("premise", "");
    if (!doc.contains("events") || !doc["events"].is_array())
        throw OutlineError("outline JSON has no events array");
    for (const auto& e : doc["events"]) {
        OutlineEvent ev;
        ev.index = e.at("index").get<std::string>();
        ev.main_event = e.at("main_event").get<std::string>();
        if (e.contains("begin_event")) ev.begin_event = e["begin_event"].get<std::string>();
        if (e.contains("end_event")) ev.end_event = e["end_event"].get<std::string>();
        if (e.contains("characters"))
            ev.characters = e["characters"].get<std::vector<std::string>>();
        out.events.push_back(std::move(ev));
    }
    validate_outline(out);
    return out;
}

std::string render_outline_json(const Outline& outline) {
    Json doc;
    doc["schema"] = "facttrack-outline-v1";
    doc["premise"] = outline.premise;
    doc["events"] = Json::array();
    for (const auto& ev : outline.events) {
        Json e;
        e["index"] = ev.index;
        e["main_event"] = ev.main_event;
        if (ev.begin_event) e["begin_event"] = *ev.begin_event;
        if (ev.end_event) e["end_event"] = *ev.end_event;
        if (ev.characters) e["characters"] = *ev.characters;
        doc["events"].push_back(std::move(e));
    }
    return doc.dump(2) + "\n";
}

Outline parse_outline_text(const std::string& text) {
    Outline out;
    std::istringstream in(text);
    std::string line;
    std::string body;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.rfind("Premise:", 0) == 0 && out.premise.empty()) {
            out.premise = trim(t.substr(8));
            continue;
        }
        body += line;
        body += "\n";
    }
    out.events = parse_outline_blocks(body);
    validate_outline(out);
    return out;
}

std::vector<OutlineEvent> parse_outline_blocks(const std::string& text) {
    std::vector<OutlineEvent> out;
    OutlineEvent* current = nullptr;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.rfind("point ", 0) == 0) {
            OutlineEvent ev;
            ev.index = trim(t.substr(6));
            out.push_back(std::move(ev));
            current = &out.back();
            continue;
        }
        if (!current) continue;
        if (t.rfind("Main event:", 0) == 0) {
            current->main_event = trim(t.substr(11));
        } else if (t.rfind("Characters:", 0) == 0) {
            std::vector<std::string> chars;
            std::istringstream cs(trim(t.substr(11)));
            std::string name;
            while (std::getline(cs, name, ',')) {
                name = trim(name);
                if (!name.empty()) chars.push_back(name);
            }
            current->characters = std::move(chars);
        } else if (t.rfind("Begin event:", 0) == 0) {
            current->begin_event = trim(t.substr(12));
        } else if (t.rfind("End event:", 0) == 0) {
            current->end_event = trim(t.substr(10));
        } else if (current->main_event.empty()) {
            // tolerate a bare continuation line as the main event
            current->main_event = t;
        }
    }
    return out;
}

std::string render_outline_text(const Outline& outline) {
    std::ostringstream out;
    if (!outline.premise.empty()) out << "Premise: " << outline.premise << "\n\n";
    for (const auto& ev : outline.events) {
        out << "point " << ev.index << "\n";
        out << "Main event: " << ev.main_event << "\n";
        if (ev.characters) {
            out << "Characters: ";
            for (std::size_t i = 0; i < ev.characters->size(); ++i) {
                if (i) out << ", ";
                out << (*ev.characters)[i];
            }
            out << "\n";
        }
        if (ev.begin_event) out << "Begin event: " << *ev.begin_event << "\n";
        if (ev.end_event) out << "End event: " << *ev.end_event << "\n";
        out << "\n";
    }
    return out.str();
}

Outline parse_outline_any(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_outline_json(text);
        break;
    }
    return parse_outline_text(text);
}

}  // namespace facttrack
