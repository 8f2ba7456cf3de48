#include <fstream>
#include <json.hpp>

#include "aba/frontend.hpp"

namespace aba {

namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "aba-trace";
constexpr int kVersion = 1;

json rules_json(const std::vector<Rule>& rules) {
    json out = json::array();
    for (const auto& r : rules) out.push_back({{"id", r.id.value}, {"rule", to_string(r)}});
    return out;
}

std::vector<Rule> rules_from(const json& j) {
    std::vector<Rule> out;
    for (const auto& e : j) {
        Rule r = parse_rule(e.at("rule").get<std::string>());
        r.id = RuleId{e.at("id").get<std::uint32_t>()};
        out.push_back(std::move(r));
    }
    return out;
}

json atoms_json(const std::set<GroundAtom>& atoms) {
    json out = json::array();
    for (const auto& a : atoms) out.push_back(to_string(a));
    return out;
}

std::set<GroundAtom> atoms_from(const json& j) {
    std::set<GroundAtom> out;
    for (const auto& e : j) out.insert(parse_ground_atom(e.get<std::string>()));
    return out;
}

}  // namespace

std::string trace_to_json(const Trace& trace, std::string_view status) {
    json doc;
    doc["format"] = kFormat;
    doc["version"] = kVersion;
    if (!status.empty()) doc["status"] = status;
    doc["constants"] = json(std::vector<std::string>(trace.constants.begin(), trace.constants.end()));

    // Surface names of contraries next to the hyphenated form used in prose.
    json aliases = json::object();
    json events = json::array();
    for (const auto& ev : trace.events) {
        json e;
        e["rule"] = to_string(ev.rule);
        e["target"] = ev.target_predicate;
        e["removed"] = rules_json(ev.removed);
        e["added"] = rules_json(ev.added);
        if (ev.new_assumption) {
            e["new_assumption"] = to_string(*ev.new_assumption);
            const std::string& c = ev.new_assumption->contrary.predicate;
            if (c.rfind("c_", 0) == 0) aliases[c] = "c-" + c.substr(2);
        } else {
            e["new_assumption"] = nullptr;
        }
        if (ev.new_examples)
            e["new_examples"] = {{"positive", atoms_json(ev.new_examples->positives)},
                                 {"negative", atoms_json(ev.new_examples->negatives)}};
        else
            e["new_examples"] = nullptr;
        events.push_back(std::move(e));
    }
    doc["aliases"] = std::move(aliases);
    doc["events"] = std::move(events);
    return doc.dump(2) + "\n";
}

Trace trace_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("malformed trace: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != kFormat) throw Error("not an aba trace");
        if (doc.at("version").get<int>() != kVersion) throw Error("unsupported trace version");
        Trace t;
        if (doc.contains("constants"))
            for (const auto& c : doc["constants"]) t.constants.insert(c.get<std::string>());
        for (const auto& e : doc.at("events")) {
            TraceEvent ev;
            auto name = rule_name_from_string(e.at("rule").get<std::string>());
            if (!name) throw Error("unknown rule name in trace: " + e.at("rule").get<std::string>());
            ev.rule = *name;
            ev.target_predicate = e.at("target").get<std::string>();
            ev.removed = rules_from(e.at("removed"));
            ev.added = rules_from(e.at("added"));
            if (e.contains("new_assumption") && !e["new_assumption"].is_null())
                ev.new_assumption = parse_assumption(e["new_assumption"].get<std::string>());
            if (e.contains("new_examples") && !e["new_examples"].is_null())
                ev.new_examples = ExampleSets{atoms_from(e["new_examples"].at("positive")),
                                              atoms_from(e["new_examples"].at("negative"))};
            t.events.push_back(std::move(ev));
        }
        return t;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed trace: ") + e.what());
    }
}

void write_trace(const Trace& trace, const std::string& path, std::string_view status) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << trace_to_json(trace, status);
    if (!out) throw Error("cannot write " + path);
}

Trace read_trace(const std::string& path) { return trace_from_json(load_document(path).text); }

}  // namespace aba
