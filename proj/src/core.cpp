#include "aba/core.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace aba {

bool is_variable_name(std::string_view name) {
    if (name.empty()) return false;
    const char c = name.front();
    return (c >= 'A' && c <= 'Z') || c == '_';
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Term& t) { return t.name; }

std::string to_string(const Atom& a) {
    if (a.args.empty()) return a.predicate;
    std::string out = a.predicate + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        out += a.args[i].name;
    }
    return out + ")";
}

std::string to_string(const Equality& e) { return e.left.name + " = " + e.right.name; }

std::string to_string(const Rule& r) {
    std::string out = to_string(r.head);
    if (r.equalities.empty() && r.body.empty()) return out + ".";
    out += " <- ";
    bool first = true;
    for (const auto& e : r.equalities) {
        if (!first) out += ", ";
        out += to_string(e);
        first = false;
    }
    for (const auto& b : r.body) {
        if (!first) out += ", ";
        out += to_string(b);
        first = false;
    }
    return out + ".";
}

std::string to_string(const AssumptionDecl& d) {
    return "assumption " + to_string(d.assumption) + " contrary " + to_string(d.contrary) + ".";
}

std::string to_string(const GroundAtom& a) {
    if (a.args.empty()) return a.predicate;
    std::string out = a.predicate + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        out += a.args[i];
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

// Numeric suffix of a canonical variable name V<k>; names that are not
// canonical sort after all canonical ones.
std::pair<std::size_t, std::string> var_key(const std::string& name) {
    if (name.size() > 1 && name[0] == 'V') {
        std::size_t v = 0;
        auto [p, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), v);
        if (ec == std::errc{} && p == name.data() + name.size()) return {v, {}};
    }
    return {static_cast<std::size_t>(-1), name};
}

bool term_less(const Term& a, const Term& b) {
    if (a.kind != b.kind) return a.is_variable();  // variables first
    if (a.is_variable()) return var_key(a.name) < var_key(b.name);
    return a.name < b.name;
}

std::optional<Equality> orient(Equality e) {
    if (e.left == e.right) return std::nullopt;
    if (e.left.is_constant() && e.right.is_variable()) std::swap(e.left, e.right);
    if (e.left.kind == e.right.kind && term_less(e.right, e.left)) std::swap(e.left, e.right);
    return e;
}

bool equality_less(const Equality& a, const Equality& b) {
    if (term_less(a.left, b.left)) return true;
    if (term_less(b.left, a.left)) return false;
    return term_less(a.right, b.right);
}

void collect_vars(const Atom& a, std::vector<std::string>& out, std::set<std::string>& seen) {
    for (const auto& t : a.args)
        if (t.is_variable() && seen.insert(t.name).second) out.push_back(t.name);
}

}  // namespace

Rule normalise(Rule raw) {
    std::size_t fresh = 0;
    auto fresh_var = [&] { return Term::variable("_F" + std::to_string(fresh++)); };

    std::vector<Equality> eqs = std::move(raw.equalities);
    auto split_atom = [&](Atom& a) {
        std::set<std::string> in_atom;
        for (auto& t : a.args) {
            if (t.is_constant()) {
                Term v = fresh_var();
                eqs.push_back({v, t});
                t = v;
            } else if (!in_atom.insert(t.name).second) {
                Term v = fresh_var();
                eqs.push_back({v, t});
                t = v;
            }
        }
    };
    split_atom(raw.head);
    std::vector<Atom> body;
    for (auto& b : raw.body) {
        if (b.predicate == kTruePredicate && b.args.empty()) continue;
        split_atom(b);
        body.push_back(std::move(b));
    }
    raw.body = std::move(body);

    // Canonical renaming by first occurrence.
    std::vector<std::string> order;
    std::set<std::string> seen;
    collect_vars(raw.head, order, seen);
    for (const auto& b : raw.body) collect_vars(b, order, seen);
    for (const auto& e : eqs) {
        for (const Term* t : {&e.left, &e.right})
            if (t->is_variable() && seen.insert(t->name).second) order.push_back(t->name);
    }
    std::map<std::string, Term> rename;
    for (std::size_t i = 0; i < order.size(); ++i)
        rename[order[i]] = Term::variable("V" + std::to_string(i));

    Rule out;
    out.id = raw.id;
    out.head = substitute(raw.head, rename);
    for (const auto& b : raw.body) out.body.push_back(substitute(b, rename));
    for (const auto& e : eqs) {
        if (auto o = orient(substitute(e, rename))) out.equalities.push_back(*o);
    }
    std::sort(out.equalities.begin(), out.equalities.end(), equality_less);
    out.equalities.erase(std::unique(out.equalities.begin(), out.equalities.end()),
                         out.equalities.end());
    return out;
}

AssumptionDecl normalise(AssumptionDecl raw) {
    std::map<std::string, Term> rename;
    std::size_t next = 0;
    for (const auto& t : raw.assumption.args) {
        if (t.is_variable() && !rename.count(t.name))
            rename[t.name] = Term::variable("V" + std::to_string(next++));
    }
    return {substitute(raw.assumption, rename), substitute(raw.contrary, rename)};
}

std::vector<std::string> rule_variables(const Rule& r) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    collect_vars(r.head, order, seen);
    for (const auto& b : r.body) collect_vars(b, order, seen);
    for (const auto& e : r.equalities) {
        for (const Term* t : {&e.left, &e.right})
            if (t->is_variable() && seen.insert(t->name).second) order.push_back(t->name);
    }
    return order;
}

std::set<std::string> head_variables(const Rule& r) {
    std::set<std::string> out;
    for (const auto& t : r.head.args)
        if (t.is_variable()) out.insert(t.name);
    return out;
}

std::set<std::string> body_variables(const Rule& r) {
    std::set<std::string> out;
    for (const auto& b : r.body)
        for (const auto& t : b.args)
            if (t.is_variable()) out.insert(t.name);
    return out;
}

std::set<std::string> rule_constants(const Rule& r) {
    std::set<std::string> out;
    auto add = [&](const Term& t) {
        if (t.is_constant()) out.insert(t.name);
    };
    for (const auto& t : r.head.args) add(t);
    for (const auto& b : r.body)
        for (const auto& t : b.args) add(t);
    for (const auto& e : r.equalities) {
        add(e.left);
        add(e.right);
    }
    return out;
}

bool has_constants(const Rule& r) {
    return std::any_of(r.equalities.begin(), r.equalities.end(), [](const Equality& e) {
        return e.left.is_constant() || e.right.is_constant();
    });
}

Atom substitute(const Atom& a, const std::map<std::string, Term>& sub) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) {
        if (t.is_variable()) {
            auto it = sub.find(t.name);
            out.args.push_back(it == sub.end() ? t : it->second);
        } else {
            out.args.push_back(t);
        }
    }
    return out;
}

Equality substitute(const Equality& e, const std::map<std::string, Term>& sub) {
    auto one = [&](const Term& t) {
        if (!t.is_variable()) return t;
        auto it = sub.find(t.name);
        return it == sub.end() ? t : it->second;
    };
    return {one(e.left), one(e.right)};
}

// ---------------------------------------------------------------------------
// Framework

const Rule* Framework::find_rule(RuleId id) const {
    auto it = std::lower_bound(rules_.begin(), rules_.end(), id,
                               [](const Rule& r, RuleId v) { return r.id < v; });
    return it != rules_.end() && it->id == id ? &*it : nullptr;
}

const AssumptionDecl* Framework::find_assumption(std::string_view predicate) const {
    for (const auto& d : assumptions_)
        if (d.assumption.predicate == predicate) return &d;
    return nullptr;
}

std::vector<const Rule*> Framework::rules_for(std::string_view head_predicate) const {
    std::vector<const Rule*> out;
    for (const auto& r : rules_)
        if (r.head.predicate == head_predicate) out.push_back(&r);
    return out;
}

std::set<std::string> Framework::predicates() const {
    std::set<std::string> out;
    for (const auto& r : rules_) {
        out.insert(r.head.predicate);
        for (const auto& b : r.body) out.insert(b.predicate);
    }
    for (const auto& d : assumptions_) {
        out.insert(d.assumption.predicate);
        out.insert(d.contrary.predicate);
    }
    return out;
}

std::set<std::string> Framework::extra_constants() const {
    std::set<std::string> used;
    for (const auto& r : rules_) used.merge(rule_constants(r));
    std::set<std::string> out;
    std::set_difference(universe_.begin(), universe_.end(), used.begin(), used.end(),
                        std::inserter(out, out.end()));
    return out;
}

namespace {

std::vector<std::string> rule_shapes(const Framework& fw) {
    std::vector<std::string> out;
    for (const auto& r : fw.rules()) out.push_back(to_string(r));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool Framework::structurally_equal(const Framework& other) const {
    return assumptions_ == other.assumptions_ && universe_ == other.universe_ &&
           rule_shapes(*this) == rule_shapes(other);
}

FrameworkBuilder::FrameworkBuilder(Framework base) : fw_(std::move(base)) {}

RuleId FrameworkBuilder::add_rule(Rule rule) {
    rule.id = fw_.next_id_;
    ++fw_.next_id_.value;
    Rule n = normalise(std::move(rule));
    for (auto& c : rule_constants(n)) fw_.universe_.insert(c);
    const RuleId id = n.id;
    fw_.rules_.push_back(std::move(n));
    return id;
}

void FrameworkBuilder::add_rule_with_id(Rule rule) {
    if (std::any_of(fw_.rules_.begin(), fw_.rules_.end(),
                    [&](const Rule& r) { return r.id == rule.id; }))
        throw Error("duplicate rule id " + std::to_string(rule.id.value));
    if (fw_.next_id_.value <= rule.id.value) fw_.next_id_.value = rule.id.value + 1;
    Rule n = normalise(std::move(rule));
    for (auto& c : rule_constants(n)) fw_.universe_.insert(c);
    // Keep the vector ordered so find_rule stays valid while building.
    auto pos = std::lower_bound(fw_.rules_.begin(), fw_.rules_.end(), n.id,
                                [](const Rule& r, RuleId v) { return r.id < v; });
    fw_.rules_.insert(pos, std::move(n));
}

bool FrameworkBuilder::remove_rule(RuleId id) {
    auto it = std::find_if(fw_.rules_.begin(), fw_.rules_.end(),
                           [&](const Rule& r) { return r.id == id; });
    if (it == fw_.rules_.end()) return false;
    fw_.rules_.erase(it);
    return true;
}

void FrameworkBuilder::add_assumption(AssumptionDecl decl) {
    AssumptionDecl n = normalise(std::move(decl));
    auto pos = std::lower_bound(fw_.assumptions_.begin(), fw_.assumptions_.end(), n);
    if (pos != fw_.assumptions_.end() && *pos == n) return;
    fw_.assumptions_.insert(pos, std::move(n));
}

void FrameworkBuilder::add_constant(std::string c) { fw_.universe_.insert(std::move(c)); }

Framework FrameworkBuilder::build() && {
    std::sort(fw_.rules_.begin(), fw_.rules_.end(),
              [](const Rule& a, const Rule& b) { return a.id < b.id; });
    // Declaration order is by assumption predicate so lookups and output are stable.
    std::sort(fw_.assumptions_.begin(), fw_.assumptions_.end());
    return std::move(fw_);
}

// ---------------------------------------------------------------------------
// Validation

std::string_view to_string(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::Flatness: return "flatness";
        case Violation::Kind::ArityConflict: return "arity-conflict";
        case Violation::Kind::UndeclaredContrary: return "undeclared-contrary";
        case Violation::Kind::ConstantOutsideUniverse: return "constant-outside-universe";
        case Violation::Kind::MalformedRule: return "malformed-rule";
        case Violation::Kind::MalformedAssumption: return "malformed-assumption";
        case Violation::Kind::ReservedPredicate: return "reserved-predicate";
    }
    return "unknown";
}

std::vector<Violation> validate(const Framework& fw) {
    using K = Violation::Kind;
    std::vector<Violation> out;

    std::map<std::string, std::set<std::size_t>> arities;
    auto note = [&](const Atom& a) { arities[a.predicate].insert(a.arity()); };

    std::map<std::string, int> decl_count;
    for (const auto& d : fw.assumptions()) {
        note(d.assumption);
        note(d.contrary);
        const std::string& p = d.assumption.predicate;
        if (++decl_count[p] == 2)
            out.push_back({K::MalformedAssumption, "assumption " + p + " declared more than once"});
        if (p == kTruePredicate)
            out.push_back({K::ReservedPredicate, "'true' cannot be an assumption"});
        std::set<std::string> vars;
        for (const auto& t : d.assumption.args) {
            if (!t.is_variable() || !vars.insert(t.name).second) {
                out.push_back({K::MalformedAssumption,
                               "assumption " + to_string(d.assumption) +
                                   " must have distinct variable arguments"});
                break;
            }
        }
        for (const auto& t : d.contrary.args) {
            if (t.is_variable() && !vars.count(t.name)) {
                out.push_back({K::UndeclaredContrary,
                               "contrary " + to_string(d.contrary) + " of " +
                                   to_string(d.assumption) + " uses variable " + t.name +
                                   " not in the assumption"});
            } else if (t.is_constant() && !fw.universe().count(t.name)) {
                out.push_back({K::ConstantOutsideUniverse,
                               "constant " + t.name + " in contrary declaration is not in the universe"});
            }
        }
        if (d.contrary.predicate.empty())
            out.push_back({K::UndeclaredContrary, "assumption " + p + " has no contrary"});
    }

    for (const auto& r : fw.rules()) {
        const std::string where = "rule " + to_string(r);
        note(r.head);
        if (fw.is_assumption_predicate(r.head.predicate))
            out.push_back({K::Flatness, where + ": assumption " + r.head.predicate + " heads a rule"});
        if (r.head.predicate == kTruePredicate)
            out.push_back({K::ReservedPredicate, where + ": 'true' cannot head a rule"});
        std::set<std::string> atom_vars;
        auto check_atom = [&](const Atom& a) {
            std::set<std::string> local;
            for (const auto& t : a.args) {
                if (!t.is_variable() || !local.insert(t.name).second) {
                    out.push_back({K::MalformedRule, where + ": atom " + to_string(a) + " is not normalised"});
                    break;
                }
            }
            for (const auto& t : a.args)
                if (t.is_variable()) atom_vars.insert(t.name);
        };
        check_atom(r.head);
        for (const auto& b : r.body) {
            note(b);
            check_atom(b);
            if (b.predicate == kTruePredicate && b.arity() != 1)
                out.push_back({K::ReservedPredicate, where + ": 'true' takes exactly one argument"});
        }
        for (const auto& e : r.equalities) {
            for (const Term* t : {&e.left, &e.right}) {
                if (t->is_variable() && !atom_vars.count(t->name))
                    out.push_back({K::MalformedRule, where + ": variable " + t->name +
                                                         " occurs only in equalities"});
            }
        }
        for (const auto& c : rule_constants(r))
            if (!fw.universe().count(c))
                out.push_back({K::ConstantOutsideUniverse, where + ": constant " + c + " is not in the universe"});
    }

    for (const auto& [p, as] : arities) {
        if (as.size() > 1) {
            std::string list;
            for (auto a : as) list += (list.empty() ? "" : ", ") + p + "/" + std::to_string(a);
            out.push_back({K::ArityConflict, "predicate used with several arities: " + list});
        }
    }
    return out;
}

void require_valid(const Framework& fw) {
    auto violations = validate(fw);
    if (violations.empty()) return;
    std::vector<std::string> messages;
    for (const auto& v : violations)
        messages.push_back(std::string(to_string(v.kind)) + ": " + v.message);
    std::string summary = "framework is not a valid flat ABA framework (" + std::to_string(messages.size()) +
                          " violation(s)): " + messages.front();
    throw ValidationError(std::move(summary), std::move(messages));
}

Framework rename_predicates(const Framework& fw, const std::map<std::string, std::string>& names) {
    auto ren = [&](Atom a) {
        if (auto it = names.find(a.predicate); it != names.end()) a.predicate = it->second;
        return a;
    };
    FrameworkBuilder b;
    for (const auto& c : fw.universe()) b.add_constant(c);
    for (const auto& d : fw.assumptions()) b.add_assumption({ren(d.assumption), ren(d.contrary)});
    for (const auto& r : fw.rules()) {
        Rule n = r;
        n.head = ren(n.head);
        for (auto& a : n.body) a = ren(a);
        b.add_rule_with_id(std::move(n));
    }
    return std::move(b).build();
}

bool equal_modulo_assumption_renaming(const Framework& a, const Framework& b) {
    const auto& da = a.assumptions();
    const auto& db = b.assumptions();
    if (da.size() != db.size()) return false;
    if (a.structurally_equal(b)) return true;
    if (da.size() > 8) return false;

    std::vector<std::size_t> perm(db.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::map<std::string, std::string> names;
        bool ok = true;
        for (std::size_t i = 0; i < da.size() && ok; ++i) {
            const auto& x = da[i];
            const auto& y = db[perm[i]];
            ok = x.assumption.arity() == y.assumption.arity() &&
                 x.contrary.arity() == y.contrary.arity();
            names[x.assumption.predicate] = y.assumption.predicate;
            if (auto [it, inserted] = names.emplace(x.contrary.predicate, y.contrary.predicate);
                !inserted && it->second != y.contrary.predicate)
                ok = false;
        }
        if (ok && rename_predicates(a, names).structurally_equal(b)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// ---------------------------------------------------------------------------
// Grounding

const GroundAtom& GroundFramework::contrary_of(const GroundAtom& assumption) const {
    auto it = contrary.find(assumption);
    if (it == contrary.end()) throw Error("not a ground assumption: " + to_string(assumption));
    return it->second;
}

std::vector<GroundRule> ground_rule(const Rule& r, const std::set<std::string>& universe,
                                    const GroundingLimits& limits) {
    const std::vector<std::string> vars = rule_variables(r);
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < vars.size(); ++i) pos[vars[i]] = i;

    const std::vector<std::string> all(universe.begin(), universe.end());
    std::vector<std::vector<std::string>> domain(vars.size(), all);
    // Equalities checked as soon as their last variable is bound.
    std::vector<std::vector<const Equality*>> checks(vars.size());
    for (const auto& e : r.equalities) {
        int last = -1;
        for (const Term* t : {&e.left, &e.right})
            if (t->is_variable()) last = std::max(last, static_cast<int>(pos.at(t->name)));
        if (last < 0) {
            if (e.left.name != e.right.name) return {};
            continue;
        }
        checks[static_cast<std::size_t>(last)].push_back(&e);
        if (e.left.is_variable() && e.right.is_constant())
            domain[pos.at(e.left.name)] = {e.right.name};
    }
    std::vector<GroundRule> out;
    std::vector<std::string> value(vars.size());
    auto term_value = [&](const Term& t) -> const std::string& {
        return t.is_variable() ? value[pos.at(t.name)] : t.name;
    };
    auto ground_atom = [&](const Atom& a) {
        GroundAtom g{a.predicate, {}};
        for (const auto& t : a.args) g.args.push_back(term_value(t));
        return g;
    };

    auto emit = [&] {
        GroundRule g;
        g.source = r.id;
        g.head = ground_atom(r.head);
        for (const auto& b : r.body) {
            if (b.predicate == kTruePredicate) {
                GroundAtom t = ground_atom(b);
                if (std::all_of(t.args.begin(), t.args.end(),
                                [&](const std::string& c) { return universe.count(c) != 0; }))
                    continue;
            }
            g.body.push_back(ground_atom(b));
        }
        g.bindings = value;
        out.push_back(std::move(g));
        if (out.size() > limits.max_instances)
            throw BudgetExceeded("ground instances of " + to_string(r), out.size(), limits.max_instances);
    };

    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == vars.size()) {
            emit();
            return;
        }
        for (const auto& c : domain[i]) {
            value[i] = c;
            bool ok = true;
            for (const Equality* e : checks[i]) {
                if (term_value(e->left) != term_value(e->right)) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

GroundFramework ground(const Framework& fw, const GroundingLimits& limits) {
    GroundFramework g;
    g.universe = fw.universe();
    if (g.universe.empty()) {
        bool needs = std::any_of(fw.rules().begin(), fw.rules().end(),
                                 [](const Rule& r) { return !rule_variables(r).empty(); }) ||
                     std::any_of(fw.assumptions().begin(), fw.assumptions().end(),
                                 [](const AssumptionDecl& d) { return d.assumption.arity() > 0; });
        if (needs) throw EmptyUniverse();
    }
    for (const auto& r : fw.rules()) {
        auto inst = ground_rule(r, g.universe, limits);
        g.rules.insert(g.rules.end(), std::make_move_iterator(inst.begin()),
                       std::make_move_iterator(inst.end()));
    }

    const std::vector<std::string> all(g.universe.begin(), g.universe.end());
    for (const auto& d : fw.assumptions()) {
        const std::size_t k = d.assumption.arity();
        std::vector<std::size_t> idx(k, 0);
        while (true) {
            std::map<std::string, Term> sub;
            GroundAtom a{d.assumption.predicate, {}};
            for (std::size_t i = 0; i < k; ++i) {
                sub[d.assumption.args[i].name] = Term::constant(all[idx[i]]);
                a.args.push_back(all[idx[i]]);
            }
            Atom c = substitute(d.contrary, sub);
            GroundAtom ga{c.predicate, {}};
            for (const auto& t : c.args) ga.args.push_back(t.name);
            g.contrary.emplace(a, std::move(ga));
            g.assumptions.push_back(std::move(a));

            std::size_t i = k;
            while (i > 0 && ++idx[i - 1] == all.size()) idx[--i] = 0;
            if (i == 0) break;
        }
    }
    std::sort(g.assumptions.begin(), g.assumptions.end());
    g.assumptions.erase(std::unique(g.assumptions.begin(), g.assumptions.end()), g.assumptions.end());
    return g;
}

}  // namespace aba
