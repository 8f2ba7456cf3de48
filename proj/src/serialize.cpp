#include <algorithm>

#include "aba/frontend.hpp"

namespace aba {

std::string serialize(const Framework& fw) {
    std::string out;
    const auto extra = fw.extra_constants();
    if (!extra.empty()) {
        out += "universe ";
        bool first = true;
        for (const auto& c : extra) {
            if (!first) out += ", ";
            out += c;
            first = false;
        }
        out += ".\n";
    }
    for (const auto& d : fw.assumptions()) out += to_string(d) + "\n";

    std::vector<const Rule*> rules;
    for (const auto& r : fw.rules()) rules.push_back(&r);
    std::stable_sort(rules.begin(), rules.end(), [](const Rule* a, const Rule* b) {
        if (a->head.predicate != b->head.predicate) return a->head.predicate < b->head.predicate;
        return a->id < b->id;
    });
    for (const Rule* r : rules) out += to_string(*r) + "\n";
    return out;
}

std::string serialize_examples(const ExampleSets& examples) {
    std::string out;
    for (const auto& a : examples.positives) out += "+ " + to_string(a) + ".\n";
    for (const auto& a : examples.negatives) out += "- " + to_string(a) + ".\n";
    return out;
}

}  // namespace aba
