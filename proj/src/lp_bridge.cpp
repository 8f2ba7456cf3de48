#include "aba/lp_bridge.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace aba {

namespace {

void arity_of(const Atom& a, std::map<std::string, std::size_t>& out) { out.emplace(a.predicate, a.arity()); }

std::vector<std::vector<std::string>> tuples(const std::vector<std::string>& universe, std::size_t k) {
    std::vector<std::vector<std::string>> out{{}};
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::vector<std::string>> next;
        for (const auto& t : out)
            for (const auto& c : universe) {
                auto u = t;
                u.push_back(c);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

std::string join_atoms(const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
    return s;
}

}  // namespace

std::set<GroundAtom> LogicProgram::herbrand_base() const {
    std::map<std::string, std::size_t> arity;
    for (const auto& r : rules) {
        arity_of(r.head, arity);
        for (const auto& a : r.positive_body) arity_of(a, arity);
        for (const auto& a : r.negative_body) arity_of(a, arity);
    }
    const std::vector<std::string> u(universe.begin(), universe.end());
    std::set<GroundAtom> out;
    for (const auto& [p, k] : arity)
        for (auto& t : tuples(u, k)) out.insert(GroundAtom{p, std::move(t)});
    return out;
}

LogicProgram to_logic_program(const Framework& fw) {
    LogicProgram lp;
    lp.universe = fw.universe();
    for (const auto& r : fw.rules()) {
        LpRule out{r.head, r.equalities, {}, {}};
        for (const auto& b : r.body) {
            const AssumptionDecl* d = fw.find_assumption(b.predicate);
            if (!d) {
                out.positive_body.push_back(b);
                continue;
            }
            std::map<std::string, Term> sub;
            for (std::size_t i = 0; i < d->assumption.args.size() && i < b.args.size(); ++i)
                sub[d->assumption.args[i].name] = b.args[i];
            out.negative_body.push_back(substitute(d->contrary, sub));
        }
        lp.rules.push_back(std::move(out));
    }
    return lp;
}

std::vector<GroundLpRule> ground_program(const LogicProgram& lp, const LpConfig& config) {
    const std::vector<std::string> u(lp.universe.begin(), lp.universe.end());
    std::vector<GroundLpRule> out;
    for (const auto& r : lp.rules) {
        std::vector<std::string> vars;
        auto note = [&](const Term& t) {
            if (t.is_variable() && std::find(vars.begin(), vars.end(), t.name) == vars.end())
                vars.push_back(t.name);
        };
        for (const auto& t : r.head.args) note(t);
        for (const auto& a : r.positive_body)
            for (const auto& t : a.args) note(t);
        for (const auto& a : r.negative_body)
            for (const auto& t : a.args) note(t);
        for (const auto& e : r.equalities) {
            note(e.left);
            note(e.right);
        }
        for (const auto& values : tuples(u, vars.size())) {
            std::map<std::string, std::string> binding;
            for (std::size_t i = 0; i < vars.size(); ++i) binding[vars[i]] = values[i];
            auto val = [&](const Term& t) { return t.is_variable() ? binding.at(t.name) : t.name; };
            auto ga = [&](const Atom& a) {
                GroundAtom g{a.predicate, {}};
                for (const auto& t : a.args) g.args.push_back(val(t));
                return g;
            };
            if (!std::all_of(r.equalities.begin(), r.equalities.end(),
                             [&](const Equality& e) { return val(e.left) == val(e.right); }))
                continue;
            GroundLpRule g{ga(r.head), {}, {}};
            for (const auto& a : r.positive_body) {
                GroundAtom b = ga(a);
                if (b.predicate == kTruePredicate &&
                    std::all_of(b.args.begin(), b.args.end(),
                                [&](const std::string& c) { return lp.universe.count(c) != 0; }))
                    continue;
                g.positive_body.push_back(std::move(b));
            }
            for (const auto& a : r.negative_body) g.negative_body.push_back(ga(a));
            out.push_back(std::move(g));
            if (out.size() > config.grounding.max_instances)
                throw BudgetExceeded("ground program rules", out.size(), config.grounding.max_instances);
        }
    }
    return out;
}

std::set<GroundAtom> least_model(const std::vector<GroundLpRule>& rules) {
    std::set<GroundAtom> m;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rules) {
            if (m.count(r.head)) continue;
            if (std::all_of(r.positive_body.begin(), r.positive_body.end(),
                            [&](const GroundAtom& b) { return m.count(b) != 0; })) {
                m.insert(r.head);
                changed = true;
            }
        }
    }
    return m;
}

std::vector<GroundLpRule> reduct(const std::vector<GroundLpRule>& rules, const std::set<GroundAtom>& m) {
    std::vector<GroundLpRule> out;
    for (const auto& r : rules) {
        if (std::any_of(r.negative_body.begin(), r.negative_body.end(),
                        [&](const GroundAtom& n) { return m.count(n) != 0; }))
            continue;
        out.push_back(GroundLpRule{r.head, r.positive_body, {}});
    }
    return out;
}

std::vector<std::set<GroundAtom>> stable_models(const LogicProgram& lp, const LpConfig& config) {
    const auto program = ground_program(lp, config);

    // Atoms outside `possible` are false in every model; atoms in `certain`
    // are true in every model.
    const std::set<GroundAtom> possible = least_model(program);
    std::vector<GroundLpRule> definite;
    for (const auto& r : program)
        if (r.negative_body.empty()) definite.push_back(r);
    const std::set<GroundAtom> certain = least_model(definite);

    std::vector<GroundAtom> open;
    std::set_difference(possible.begin(), possible.end(), certain.begin(), certain.end(),
                        std::back_inserter(open));
    if (open.size() > config.atom_budget || open.size() >= 63)
        throw BudgetExceeded("undetermined atoms", open.size(), config.atom_budget);

    std::set<std::set<GroundAtom>> models;
    const std::uint64_t limit = std::uint64_t{1} << open.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        std::set<GroundAtom> m = certain;
        for (std::size_t i = 0; i < open.size(); ++i)
            if (mask >> i & 1) m.insert(open[i]);
        if (least_model(reduct(program, m)) == m) models.insert(std::move(m));
    }
    return {models.begin(), models.end()};
}

std::string to_text(const LogicProgram& lp) {
    std::ostringstream os;
    os << "% " << lp.rules.size() << " rules\n";
    if (!lp.universe.empty()) {
        std::vector<std::string> u(lp.universe.begin(), lp.universe.end());
        os << "% universe: " << join_atoms(u) << "\n";
    }
    for (const auto& r : lp.rules) {
        std::vector<std::string> body;
        for (const auto& e : r.equalities) body.push_back(to_string(e));
        for (const auto& a : r.positive_body) body.push_back(to_string(a));
        for (const auto& a : r.negative_body) body.push_back("not " + to_string(a));
        os << to_string(r.head);
        if (!body.empty()) os << " :- " << join_atoms(body);
        os << ".\n";
    }
    return os.str();
}

CrossCheckReport cross_check(const Framework& fw, const SemanticsConfig& semantics, const LpConfig& lp) {
    CrossCheckReport report;
    const auto extensions = stable_extensions(fw, semantics);
    const auto models = stable_models(to_logic_program(fw), lp);
    report.extension_count = extensions.size();
    report.model_count = models.size();

    std::set<std::set<GroundAtom>> from_aba;
    for (const auto& e : extensions) {
        std::set<GroundAtom> claims;
        for (const auto& c : e.claims)
            if (!fw.is_assumption_predicate(c.predicate)) claims.insert(c);
        from_aba.insert(std::move(claims));
    }
    const std::set<std::set<GroundAtom>> from_lp(models.begin(), models.end());
    report.match = from_aba == from_lp;
    if (!report.match) {
        auto describe = [](const std::set<GroundAtom>& s) {
            std::vector<std::string> parts;
            for (const auto& a : s) parts.push_back(to_string(a));
            return "{" + join_atoms(parts) + "}";
        };
        for (const auto& s : from_aba)
            if (!from_lp.count(s)) {
                report.detail = "extension without matching model: " + describe(s);
                return report;
            }
        for (const auto& s : from_lp)
            if (!from_aba.count(s)) {
                report.detail = "model without matching extension: " + describe(s);
                return report;
            }
        report.detail = "duplicate claim sets among extensions";
    }
    return report;
}

}  // namespace aba
