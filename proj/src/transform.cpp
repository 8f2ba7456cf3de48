#include "aba/transform.hpp"

#include <algorithm>
#include <map>

namespace aba {

std::string_view to_string(RuleName r) {
    switch (r) {
        case RuleName::RoteLearning: return "RoteLearning";
        case RuleName::EqualityRemoval: return "EqualityRemoval";
        case RuleName::Folding: return "Folding";
        case RuleName::Subsumption: return "Subsumption";
        case RuleName::AssumptionIntroduction: return "AssumptionIntroduction";
    }
    return "?";
}

std::optional<RuleName> rule_name_from_string(std::string_view s) {
    for (RuleName r : {RuleName::RoteLearning, RuleName::EqualityRemoval, RuleName::Folding,
                       RuleName::Subsumption, RuleName::AssumptionIntroduction})
        if (to_string(r) == s) return r;
    return std::nullopt;
}

namespace {

const Rule& require_rule(const Framework& fw, RuleId id) {
    const Rule* r = fw.find_rule(id);
    if (!r) throw TransformError("no rule with id " + std::to_string(id.value));
    return *r;
}

/// Replaces one rule by another under a fresh id.
std::pair<Framework, Rule> replace_rule(const Framework& fw, RuleId old_id, Rule replacement) {
    FrameworkBuilder b(fw);
    b.remove_rule(old_id);
    const RuleId id = b.add_rule(std::move(replacement));
    Framework out = std::move(b).build();
    return {out, *out.find_rule(id)};
}

void collect(const Term& t, std::set<std::string>& out) {
    if (t.is_variable()) out.insert(t.name);
}
void collect(const Atom& a, std::set<std::string>& out) {
    for (const auto& t : a.args) collect(t, out);
}
void collect(const Equality& e, std::set<std::string>& out) {
    collect(e.left, out);
    collect(e.right, out);
}

// ---------------------------------------------------------------------------
// Fold matching

using Renaming = std::map<std::string, std::string>;

struct FoldMatch {
    FoldPartition partition;
    Renaming theta;  // folder variable -> target variable
    std::vector<std::size_t> folder_leftover;  // folder equalities that become Eqs2
};

class FoldMatcher {
public:
    FoldMatcher(const Rule& target, const Rule& folder) : target_(target), folder_(folder) {}

    std::vector<FoldMatch> run() {
        State s;
        s.used_body.assign(target_.body.size(), false);
        s.used_eq.assign(target_.equalities.size(), false);
        body(0, s);
        return std::move(out_);
    }

private:
    struct State {
        Renaming theta;
        std::map<std::string, std::string> inverse;
        std::vector<bool> used_body;
        std::vector<bool> used_eq;
        std::vector<std::size_t> leftover;
    };

    static bool bind(State& s, const std::string& fv, const std::string& tv) {
        auto it = s.theta.find(fv);
        if (it != s.theta.end()) return it->second == tv;
        auto jt = s.inverse.find(tv);
        if (jt != s.inverse.end()) return false;
        s.theta.emplace(fv, tv);
        s.inverse.emplace(tv, fv);
        return true;
    }

    static bool match_term(State& s, const Term& f, const Term& t) {
        if (f.is_constant()) return t.is_constant() && f.name == t.name;
        return t.is_variable() && bind(s, f.name, t.name);
    }

    void body(std::size_t i, const State& s) {
        if (i == folder_.body.size()) {
            equalities(0, s);
            return;
        }
        const Atom& fa = folder_.body[i];
        for (std::size_t j = 0; j < target_.body.size(); ++j) {
            const Atom& ta = target_.body[j];
            if (s.used_body[j] || ta.predicate != fa.predicate || ta.arity() != fa.arity()) continue;
            State next = s;
            bool ok = true;
            for (std::size_t k = 0; k < fa.arity() && ok; ++k) ok = match_term(next, fa.args[k], ta.args[k]);
            if (!ok) continue;
            next.used_body[j] = true;
            body(i + 1, next);
        }
    }

    void equalities(std::size_t k, const State& s) {
        if (k == folder_.equalities.size()) {
            record(s);
            return;
        }
        const Equality& fe = folder_.equalities[k];
        for (std::size_t j = 0; j < target_.equalities.size(); ++j) {
            if (s.used_eq[j]) continue;
            const Equality& te = target_.equalities[j];
            for (bool flip : {false, true}) {
                State next = s;
                const Term& tl = flip ? te.right : te.left;
                const Term& tr = flip ? te.left : te.right;
                if (match_term(next, fe.left, tl) && match_term(next, fe.right, tr)) {
                    next.used_eq[j] = true;
                    equalities(k + 1, next);
                }
            }
        }
        State next = s;
        next.leftover.push_back(k);
        equalities(k + 1, next);
    }

    void record(const State& s) {
        FoldMatch m;
        for (std::size_t j = 0; j < s.used_eq.size(); ++j)
            if (s.used_eq[j]) m.partition.target_equalities.push_back(j);
        for (std::size_t j = 0; j < s.used_body.size(); ++j)
            if (s.used_body[j]) m.partition.target_body.push_back(j);
        m.theta = s.theta;
        m.folder_leftover = s.leftover;
        for (const auto& prev : out_)
            if (prev.partition == m.partition && prev.theta == m.theta &&
                prev.folder_leftover == m.folder_leftover)
                return;
        out_.push_back(std::move(m));
    }

    const Rule& target_;
    const Rule& folder_;
    std::vector<FoldMatch> out_;
};

std::optional<Rule> build_fold(const Rule& target, const Rule& folder, const FoldMatch& m) {
    Renaming theta = m.theta;
    std::size_t fresh = 0;
    auto rename = [&](const Term& t) {
        if (t.is_constant()) return t;
        auto it = theta.find(t.name);
        if (it == theta.end()) it = theta.emplace(t.name, "_Fold" + std::to_string(fresh++)).first;
        return Term::variable(it->second);
    };
    auto rename_atom = [&](const Atom& a) {
        Atom out{a.predicate, {}};
        for (const auto& t : a.args) out.args.push_back(rename(t));
        return out;
    };

    std::vector<Equality> eqs2;
    for (std::size_t k : m.folder_leftover)
        eqs2.push_back(Equality{rename(folder.equalities[k].left), rename(folder.equalities[k].right)});
    const Atom k_atom = rename_atom(folder.head);

    std::vector<Equality> kept;
    for (std::size_t j = 0; j < target.equalities.size(); ++j)
        if (!std::binary_search(m.partition.target_equalities.begin(), m.partition.target_equalities.end(), j))
            kept.push_back(target.equalities[j]);
    std::vector<Atom> b2;
    for (std::size_t j = 0; j < target.body.size(); ++j)
        if (!std::binary_search(m.partition.target_body.begin(), m.partition.target_body.end(), j))
            b2.push_back(target.body[j]);

    std::set<std::string> outside, in_eqs2;
    collect(target.head, outside);
    for (const auto& a : b2) collect(a, outside);
    for (const auto& e : kept) collect(e, outside);
    for (const auto& e : eqs2) collect(e, in_eqs2);
    for (const auto& v : in_eqs2)
        if (outside.count(v)) return std::nullopt;
    // Every equality variable must still occur in the head or body.
    std::set<std::string> atoms_vars, eq_vars = in_eqs2;
    collect(target.head, atoms_vars);
    collect(k_atom, atoms_vars);
    for (const auto& a : b2) collect(a, atoms_vars);
    for (const auto& e : kept) collect(e, eq_vars);
    for (const auto& v : eq_vars)
        if (!atoms_vars.count(v)) return std::nullopt;

    Rule r;
    r.id = target.id;
    r.head = target.head;
    r.equalities = kept;
    r.equalities.insert(r.equalities.end(), eqs2.begin(), eqs2.end());
    r.body.push_back(k_atom);
    r.body.insert(r.body.end(), b2.begin(), b2.end());
    return normalise(std::move(r));
}

std::vector<AssumptionSet> minimise(std::vector<AssumptionSet> sets) {
    std::sort(sets.begin(), sets.end(),
              [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    std::vector<AssumptionSet> out;
    for (auto& s : sets)
        if (std::none_of(out.begin(), out.end(), [&](const AssumptionSet& k) {
                return std::includes(s.begin(), s.end(), k.begin(), k.end());
            }))
            out.push_back(std::move(s));
    return out;
}

// Union-find over terms, used to decide equality entailment.
class TermClasses {
public:
    std::string find(const std::string& k) {
        auto it = parent_.find(k);
        if (it == parent_.end() || it->second == k) return k;
        std::string root = find(it->second);
        parent_[k] = root;
        return root;
    }
    void unite(const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra != rb) parent_[ra] = rb;
    }
    static std::string key(const Term& t) { return (t.is_variable() ? "v:" : "c:") + t.name; }

private:
    std::map<std::string, std::string> parent_;
};

}  // namespace

// ---------------------------------------------------------------------------

Transformed rote_learn(const Framework& fw, const GroundAtom& example) {
    if (fw.is_assumption_predicate(example.predicate))
        throw TransformError("cannot rote-learn assumption " + to_string(example));
    if (example.predicate == kTruePredicate) throw TransformError("cannot rote-learn the built-in true");
    Rule raw;
    raw.head.predicate = example.predicate;
    for (const auto& c : example.args) raw.head.args.push_back(Term::constant(c));
    FrameworkBuilder b(fw);
    const RuleId id = b.add_rule(std::move(raw));
    Framework out = std::move(b).build();
    TraceEvent ev{RuleName::RoteLearning, example.predicate, {}, {*out.find_rule(id)}, {}, {}};
    return {std::move(out), std::move(ev)};
}

Transformed equality_removal(const Framework& fw, RuleId rule, const Equality& equality) {
    const Rule old = require_rule(fw, rule);
    auto it = std::find(old.equalities.begin(), old.equalities.end(), equality);
    if (it == old.equalities.end()) {
        const Equality flipped{equality.right, equality.left};
        it = std::find(old.equalities.begin(), old.equalities.end(), flipped);
    }
    if (it == old.equalities.end())
        throw TransformError("rule " + to_string(old) + " has no equality " + to_string(equality));
    Rule next = old;
    next.equalities.erase(next.equalities.begin() + (it - old.equalities.begin()));
    auto [out, added] = replace_rule(fw, rule, std::move(next));
    TraceEvent ev{RuleName::EqualityRemoval, old.head.predicate, {old}, {added}, {}, {}};
    return {std::move(out), std::move(ev)};
}

std::vector<FoldPartition> fold_partitions(const Rule& target, const Rule& folder) {
    std::vector<FoldPartition> out;
    for (const auto& m : FoldMatcher(target, folder).run()) {
        if (std::find(out.begin(), out.end(), m.partition) != out.end()) continue;
        if (build_fold(target, folder, m)) out.push_back(m.partition);
    }
    return out;
}

std::optional<Rule> fold_rule(const Rule& target, const Rule& folder, const FoldPartition& partition) {
    for (const auto& m : FoldMatcher(target, folder).run())
        if (m.partition == partition)
            if (auto r = build_fold(target, folder, m)) return r;
    return std::nullopt;
}

Transformed fold(const Framework& fw, RuleId target, RuleId folder, const FoldPartition& partition) {
    if (target == folder) throw TransformError("a rule cannot fold itself");
    const Rule t = require_rule(fw, target);
    const Rule& f = require_rule(fw, folder);
    auto folded = fold_rule(t, f, partition);
    if (!folded)
        throw TransformError("cannot fold " + to_string(t) + " with " + to_string(f) +
                             " under the given partition");
    auto [out, added] = replace_rule(fw, target, std::move(*folded));
    TraceEvent ev{RuleName::Folding, t.head.predicate, {t}, {added}, {}, {}};
    return {std::move(out), std::move(ev)};
}

bool theta_subsumes(const Rule& keeper, const Rule& victim) {
    if (keeper.head.predicate != victim.head.predicate || keeper.head.arity() != victim.head.arity())
        return false;
    TermClasses classes;
    for (const auto& e : victim.equalities) classes.unite(TermClasses::key(e.left), TermClasses::key(e.right));
    // Victims with contradictory equalities have no instances.
    {
        std::map<std::string, std::string> constant_of;
        for (const auto& e : victim.equalities)
            for (const Term* t : {&e.left, &e.right})
                if (t->is_constant()) {
                    auto root = classes.find(TermClasses::key(*t));
                    auto [it, fresh] = constant_of.emplace(root, t->name);
                    if (!fresh && it->second != t->name) return true;
                }
    }

    std::map<std::string, std::string> theta;  // keeper var -> victim class root
    auto bind = [&](std::map<std::string, std::string>& th, const Term& k, const Term& v) {
        const std::string root = classes.find(TermClasses::key(v));
        if (k.is_constant()) return classes.find(TermClasses::key(k)) == root;
        auto [it, fresh] = th.emplace(k.name, root);
        return fresh || it->second == root;
    };
    for (std::size_t i = 0; i < keeper.head.arity(); ++i)
        if (!bind(theta, keeper.head.args[i], victim.head.args[i])) return false;

    std::vector<const Atom*> goals;
    for (const auto& a : keeper.body)
        if (a.predicate != kTruePredicate) goals.push_back(&a);

    auto check_eqs = [&](std::map<std::string, std::string>& th) {
        for (const auto& e : keeper.equalities) {
            auto root = [&](const Term& t) -> std::optional<std::string> {
                if (t.is_constant()) return classes.find(TermClasses::key(t));
                auto it = th.find(t.name);
                if (it == th.end()) return std::nullopt;
                return it->second;
            };
            auto l = root(e.left), r = root(e.right);
            if (!l || !r || *l != *r) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t i, std::map<std::string, std::string> th) -> bool {
        if (i == goals.size()) return check_eqs(th);
        for (const auto& v : victim.body) {
            if (v.predicate != goals[i]->predicate || v.arity() != goals[i]->arity()) continue;
            auto next = th;
            bool ok = true;
            for (std::size_t k = 0; k < v.arity() && ok; ++k) ok = bind(next, goals[i]->args[k], v.args[k]);
            if (ok && self(self, i + 1, std::move(next))) return true;
        }
        return false;
    };
    return rec(rec, 0, theta);
}

bool subsumes(const Framework& fw, RuleId keeper_id, RuleId victim_id, const SemanticsConfig& config) {
    if (keeper_id == victim_id) throw TransformError("a rule cannot subsume itself");
    const Rule& keeper = require_rule(fw, keeper_id);
    const Rule& victim = require_rule(fw, victim_id);
    if (keeper.head.predicate != victim.head.predicate || keeper.head.arity() != victim.head.arity())
        return false;
    if (theta_subsumes(keeper, victim)) return true;

    FrameworkBuilder b(fw);
    b.remove_rule(victim_id);
    const Framework rest = std::move(b).build();
    const GroundFramework gf = ground(rest, config.grounding);
    const SupportIndex index(gf, config);

    std::map<GroundAtom, std::vector<std::vector<GroundAtom>>> keeper_bodies;
    for (auto& g : ground_rule(keeper, fw.universe(), config.grounding))
        keeper_bodies[g.head].push_back(std::move(g.body));

    for (const auto& inst : ground_rule(victim, fw.universe(), config.grounding)) {
        std::vector<AssumptionSet> unions{{}};
        bool argued = true;
        for (const auto& atom : inst.body) {
            const auto& sup = index.supports(atom);
            if (sup.empty()) {
                argued = false;
                break;
            }
            std::vector<AssumptionSet> next;
            for (const auto& u : unions)
                for (const auto& s : sup) {
                    AssumptionSet v = u;
                    v.insert(s.begin(), s.end());
                    next.push_back(std::move(v));
                }
            unions = minimise(std::move(next));
            if (unions.size() > config.argument_budget)
                throw BudgetExceeded("support combinations for " + to_string(inst.head), unions.size(),
                                     config.argument_budget);
        }
        if (!argued) continue;

        auto within = [&](const std::vector<GroundAtom>& body, const AssumptionSet& s) {
            return std::all_of(body.begin(), body.end(), [&](const GroundAtom& a) {
                const auto& sup = index.supports(a);
                return std::any_of(sup.begin(), sup.end(), [&](const AssumptionSet& t) {
                    return std::includes(s.begin(), s.end(), t.begin(), t.end());
                });
            });
        };
        auto it = keeper_bodies.find(inst.head);
        if (it == keeper_bodies.end()) return false;
        const bool some = std::any_of(it->second.begin(), it->second.end(), [&](const auto& body) {
            return std::all_of(unions.begin(), unions.end(), [&](const AssumptionSet& s) { return within(body, s); });
        });
        if (!some) return false;
    }
    return true;
}

Transformed remove_subsumed(const Framework& fw, RuleId keeper, RuleId victim, const SemanticsConfig& config) {
    if (!subsumes(fw, keeper, victim, config))
        throw TransformError("rule " + std::to_string(victim.value) + " is not subsumed by rule " +
                             std::to_string(keeper.value));
    const Rule old = require_rule(fw, victim);
    FrameworkBuilder b(fw);
    b.remove_rule(victim);
    TraceEvent ev{RuleName::Subsumption, old.head.predicate, {old}, {}, {}, {}};
    return {std::move(b).build(), std::move(ev)};
}

std::string fresh_assumption_name(const Framework& fw) {
    const auto used = fw.predicates();
    for (std::size_t k = 1;; ++k) {
        std::string name = "alpha_" + std::to_string(k);
        if (!used.count(name) && !used.count("c_" + name)) return name;
    }
}

Transformed assumption_introduction(const Framework& fw, RuleId rule, const std::vector<std::string>& scope,
                                    const AssumptionChoice& choice) {
    const Rule old = require_rule(fw, rule);
    std::set<std::string> vars;
    collect(old.head, vars);
    for (const auto& a : old.body) collect(a, vars);
    std::set<std::string> seen;
    for (const auto& v : scope) {
        if (!vars.count(v)) throw TransformError("scope variable " + v + " does not occur in " + to_string(old));
        if (!seen.insert(v).second) throw TransformError("scope variable " + v + " repeated");
    }

    std::optional<AssumptionDecl> fresh;
    std::string predicate;
    if (const auto* name = std::get_if<std::string>(&choice)) {
        const AssumptionDecl* d = fw.find_assumption(*name);
        if (!d) throw TransformError("no assumption named " + *name);
        if (d->assumption.arity() != scope.size())
            throw TransformError("assumption " + *name + " has arity " + std::to_string(d->assumption.arity()) +
                                 ", scope has " + std::to_string(scope.size()));
        predicate = *name;
    } else {
        predicate = fresh_assumption_name(fw);
        AssumptionDecl d{{predicate, {}}, {"c_" + predicate, {}}};
        for (std::size_t i = 0; i < scope.size(); ++i) {
            d.assumption.args.push_back(Term::variable("V" + std::to_string(i)));
            d.contrary.args.push_back(Term::variable("V" + std::to_string(i)));
        }
        fresh = normalise(std::move(d));
    }

    Rule next = old;
    Atom alpha{predicate, {}};
    for (const auto& v : scope) alpha.args.push_back(Term::variable(v));
    next.body.push_back(std::move(alpha));

    FrameworkBuilder b(fw);
    if (fresh) b.add_assumption(*fresh);
    b.remove_rule(rule);
    const RuleId id = b.add_rule(std::move(next));
    Framework out = std::move(b).build();
    TraceEvent ev{RuleName::AssumptionIntroduction, old.head.predicate, {old}, {*out.find_rule(id)}, fresh, {}};
    return {std::move(out), std::move(ev)};
}

Framework apply_event(const Framework& fw, const TraceEvent& event) {
    FrameworkBuilder b(fw);
    for (const auto& r : event.removed) {
        const Rule* present = b.peek().find_rule(r.id);
        if (!present || !present->same_shape(normalise(r)))
            throw TransformError("trace removes rule " + std::to_string(r.id.value) + " which is not present");
        b.remove_rule(r.id);
    }
    if (event.new_assumption) b.add_assumption(*event.new_assumption);
    for (const auto& r : event.added) b.add_rule_with_id(r);
    return std::move(b).build();
}

Framework replay(const Framework& background, const Trace& trace) {
    FrameworkBuilder b(background);
    for (const auto& c : trace.constants) b.add_constant(c);
    Framework fw = std::move(b).build();
    for (const auto& ev : trace.events) fw = apply_event(fw, ev);
    return fw;
}

}  // namespace aba
