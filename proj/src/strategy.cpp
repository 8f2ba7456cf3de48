#include "aba/strategy.hpp"

#include <algorithm>
#include <tuple>

namespace aba {

std::string_view to_string(DivergencePolicy p) {
    return p == DivergencePolicy::Reuse ? "reuse" : "rote_fallback";
}

std::optional<DivergencePolicy> divergence_policy_from_string(std::string_view s) {
    if (s == "reuse") return DivergencePolicy::Reuse;
    if (s == "rote_fallback" || s == "rote-fallback") return DivergencePolicy::RoteFallback;
    return std::nullopt;
}

std::string_view to_string(LearnStatus s) {
    switch (s) {
        case LearnStatus::Converged: return "converged";
        case LearnStatus::IterationCap: return "iteration-cap";
        case LearnStatus::Failed: return "failed";
    }
    return "?";
}

namespace {

using Tuple = std::vector<std::string>;

std::vector<RuleId> rule_ids_for(const Framework& fw, const std::string& p) {
    std::vector<RuleId> out;
    for (const Rule* r : fw.rules_for(p)) out.push_back(r->id);
    return out;
}

std::pair<std::set<Tuple>, std::set<Tuple>> tuples_of(const ExampleSets& e) {
    std::set<Tuple> pos, neg;
    for (const auto& a : e.positives) pos.insert(a.args);
    for (const auto& a : e.negatives) neg.insert(a.args);
    return {pos, neg};
}

std::string canonical_key(const Rule& r, const std::vector<std::string>& scope) {
    Rule k;
    k.head.predicate = "scope";
    for (const auto& v : scope) k.head.args.push_back(Term::variable(v));
    k.equalities = r.equalities;
    k.body = r.body;
    return to_string(normalise(std::move(k)));
}

/// A constant binding `V = c`, oriented by normalise with the variable left.
bool binds_constant(const Equality& e) { return e.left.is_variable() && e.right.is_constant(); }

// Constants left once equalities binding non-head variables are dropped.
std::size_t anchored_constant_count(const Rule& r) {
    const auto head_vars = head_variables(r);
    std::size_t n = 0;
    for (const auto& e : r.equalities)
        if (!(binds_constant(e) && !head_vars.count(e.left.name))) n += e.left.is_constant() + e.right.is_constant();
    return n;
}

}  // namespace

void validate_problem(const LearningProblem& problem) {
    require_valid(problem.background);
    if (problem.examples.positives.empty())
        throw ValidationError("learning problem has no positive examples", {});
    std::vector<std::string> overlap;
    for (const auto& a : problem.examples.positives)
        if (problem.examples.negatives.count(a)) overlap.push_back(to_string(a));
    if (!overlap.empty()) throw ValidationError("examples are both positive and negative", overlap);
    for (const auto* set : {&problem.examples.positives, &problem.examples.negatives})
        for (const auto& a : *set)
            if (problem.background.is_assumption_predicate(a.predicate))
                throw ValidationError("example " + to_string(a) + " is an assumption", {});
}

GoalReport goal_check(const Framework& fw, const ExampleSets& examples, Mode mode, const SemanticsConfig& config) {
    GoalReport report;
    report.mode = mode;
    const auto exts = stable_extensions(fw, config);
    report.extension_count = exts.size();
    report.existence = !exts.empty();

    const StableExtension* witness = nullptr;
    if (mode == Mode::Credulous) {
        std::pair<std::size_t, std::size_t> best{0, 0};
        for (const auto& e : exts) {
            std::size_t pos = 0, neg = 0;
            for (const auto& a : examples.positives) pos += e.claims.count(a);
            for (const auto& a : examples.negatives) neg += e.claims.count(a);
            const std::pair<std::size_t, std::size_t> score{pos, examples.negatives.size() - neg};
            if (!witness || score > best) {
                witness = &e;
                best = score;
            }
        }
    }

    bool all_pos = true, no_neg = true;
    for (const auto* set : {&examples.positives, &examples.negatives}) {
        const bool positive = set == &examples.positives;
        for (const auto& a : *set) {
            ExampleReport r{a, positive, entails(exts, a, mode), witness && witness->claims.count(a) != 0};
            const bool holds = mode == Mode::Credulous ? r.in_witness : r.covered;
            if (positive && !holds) all_pos = false;
            if (!positive && holds) no_neg = false;
            report.examples.push_back(std::move(r));
        }
    }
    report.completeness = all_pos;
    report.consistency = no_neg;
    return report;
}

void LearnerState::apply(Transformed t) {
    framework = std::move(t.framework);
    trace.events.push_back(std::move(t.event));
}

LearnerState start(const LearningProblem& problem, const StrategyConfig& config) {
    validate_problem(problem);
    if (config.max_iterations < 1) throw Error("max_iterations must be at least 1");
    LearnerState s;
    s.config = config;
    FrameworkBuilder b(problem.background);
    for (const auto* set : {&problem.examples.positives, &problem.examples.negatives})
        for (const auto& a : *set)
            for (const auto& c : a.args)
                if (!problem.background.universe().count(c)) {
                    b.add_constant(c);
                    s.trace.constants.insert(c);
                }
    s.framework = std::move(b).build();
    for (const auto& r : s.framework.rules()) s.background_rules.insert(r.id);
    s.working = problem.examples;

    std::map<std::string, ExampleSets> by_predicate;
    for (const auto& a : problem.examples.positives) by_predicate[a.predicate].positives.insert(a);
    for (const auto& a : problem.examples.negatives) by_predicate[a.predicate].negatives.insert(a);
    for (auto& [p, ex] : by_predicate) {
        s.queue.push_back(s.subproblems.size());
        s.subproblems.push_back(SubProblem{p, std::move(ex), std::nullopt, {}, false});
    }
    return s;
}

std::vector<RuleId> rote_step(LearnerState& state, const std::string& predicate) {
    std::vector<RuleId> out;
    for (const auto& a : state.working.positives) {
        if (a.predicate != predicate) continue;
        Transformed t = rote_learn(state.framework, a);
        out.push_back(t.event.added.front().id);
        state.apply(std::move(t));
    }
    return out;
}

namespace {

struct FoldChoice {
    RuleId folder;
    FoldPartition partition;
    std::tuple<std::size_t, std::size_t, std::size_t> score;  // lower is better
};

std::optional<FoldChoice> best_fold(const LearnerState& state, const Framework& fw, const Rule& target,
                                    const std::set<std::string>& avoid) {
    std::vector<const Rule*> candidates;
    for (const auto& r : fw.rules())
        if (state.background_rules.count(r.id)) candidates.push_back(&r);
    for (const auto& r : fw.rules())
        if (!state.background_rules.count(r.id) && !has_constants(r)) candidates.push_back(&r);

    const std::size_t before = anchored_constant_count(target);
    std::optional<FoldChoice> best;
    for (const Rule* f : candidates) {
        if (f->id == target.id || f->head.predicate == target.head.predicate || avoid.count(f->head.predicate))
            continue;
        for (const auto& part : fold_partitions(target, *f)) {
            auto folded = fold_rule(target, *f, part);
            if (!folded) continue;
            const std::size_t after = anchored_constant_count(*folded);
            if (after >= before) continue;
            // Most constants eliminated first, then fewer equalities, then a smaller body.
            FoldChoice c{f->id, part, {after, folded->equalities.size(), folded->body.size()}};
            if (!best || c.score < best->score) best = std::move(c);
        }
    }
    return best;
}

/// Removes the first victim subsumed by another rule for the predicate.
bool subsumption_pass(LearnerState& state, const std::string& p) {
    const auto ids = rule_ids_for(state.framework, p);
    for (RuleId victim : ids)
        for (RuleId keeper : ids) {
            if (keeper == victim) continue;
            if (subsumes(state.framework, keeper, victim, state.config.semantics)) {
                state.apply(remove_subsumed(state.framework, keeper, victim, state.config.semantics));
                return true;
            }
        }
    return false;
}

}  // namespace

void generalise_step(LearnerState& state, std::size_t subproblem, const std::vector<RuleId>& rote_rules) {
    const SubProblem sp = state.subproblems.at(subproblem);
    const std::string& p = sp.predicate;
    for (RuleId id : rote_rules) {
        if (!state.framework.find_rule(id)) continue;

        bool removed = false;
        for (RuleId keeper : rule_ids_for(state.framework, p)) {
            if (keeper == id) continue;
            if (subsumes(state.framework, keeper, id, state.config.semantics)) {
                state.apply(remove_subsumed(state.framework, keeper, id, state.config.semantics));
                removed = true;
                break;
            }
        }
        if (removed) continue;

        Framework fw = state.framework;
        std::vector<TraceEvent> events;
        RuleId cur = id;
        auto take = [&](Transformed t) {
            cur = t.event.added.front().id;
            fw = std::move(t.framework);
            events.push_back(std::move(t.event));
        };
        for (std::size_t depth = 0; depth < state.config.fold_search_depth && has_constants(*fw.find_rule(cur));
             ++depth) {
            const Rule r = *fw.find_rule(cur);
            const auto head_vars = head_variables(r);
            auto local = std::find_if(r.equalities.begin(), r.equalities.end(), [&](const Equality& e) {
                return binds_constant(e) && !head_vars.count(e.left.name);
            });
            if (local != r.equalities.end()) {
                take(equality_removal(fw, cur, *local));
                continue;
            }
            if (auto f = best_fold(state, fw, r, sp.avoid_predicates)) {
                take(fold(fw, cur, f->folder, f->partition));
                continue;
            }
            if (!r.body.empty()) {
                auto head_eq = std::find_if(r.equalities.begin(), r.equalities.end(), binds_constant);
                if (head_eq != r.equalities.end()) {
                    take(equality_removal(fw, cur, *head_eq));
                    continue;
                }
            }
            break;
        }
        if (has_constants(*fw.find_rule(cur))) {
            state.notes.push_back("kept rote rule " + to_string(*state.framework.find_rule(id)));
            continue;
        }
        state.framework = std::move(fw);
        for (auto& e : events) state.trace.events.push_back(std::move(e));
    }
    while (subsumption_pass(state, p)) {
    }
}

bool divergence_check(const LearnerState& state, std::size_t subproblem, const ExampleSets& candidate) {
    const auto target = tuples_of(candidate);
    std::optional<std::size_t> i = subproblem;
    while (i) {
        const SubProblem& sp = state.subproblems.at(*i);
        if (tuples_of(sp.examples) == target) return true;
        i = sp.parent;
    }
    return false;
}

namespace {

struct Slot {
    std::optional<std::size_t> body_index;  // empty for a head variable missing from the body
    std::vector<std::string> vars;
};

struct Split {
    std::vector<std::size_t> body_atoms;
    std::vector<std::string> scope;
    std::set<Tuple> plus;
    std::set<Tuple> minus;
};

Tuple project(const GroundRule& inst, const std::map<std::string, std::size_t>& pos,
              const std::vector<std::string>& scope) {
    Tuple t;
    for (const auto& v : scope) t.push_back(inst.bindings.at(pos.at(v)));
    return t;
}

std::optional<Split> find_split(const Framework& fw, const Rule& rule, const std::vector<const GroundRule*>& negatives,
                                const std::vector<std::pair<GroundAtom, std::vector<const GroundRule*>>>& positives) {
    std::vector<Slot> slots;
    std::set<std::string> in_body;
    for (std::size_t j = 0; j < rule.body.size(); ++j) {
        const Atom& a = rule.body[j];
        for (const auto& t : a.args) in_body.insert(t.name);
        if (fw.is_assumption_predicate(a.predicate)) continue;
        Slot s{j, {}};
        for (const auto& t : a.args) s.vars.push_back(t.name);
        slots.push_back(std::move(s));
    }
    for (const auto& t : rule.head.args)
        if (!in_body.count(t.name)) slots.push_back(Slot{std::nullopt, {t.name}});

    const auto vars = rule_variables(rule);
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < vars.size(); ++i) pos[vars[i]] = i;

    const std::size_t n = slots.size();
    for (std::size_t size = n == 0 ? 0 : 1; size <= n; ++size) {
        // Index combinations of the given size in lexicographic order.
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            Split s;
            for (std::size_t i : pick)
                if (slots[i].body_index) s.body_atoms.push_back(*slots[i].body_index);
            for (std::size_t i : pick)
                for (const auto& v : slots[i].vars)
                    if (std::find(s.scope.begin(), s.scope.end(), v) == s.scope.end()) s.scope.push_back(v);
            for (const GroundRule* g : negatives) s.minus.insert(project(*g, pos, s.scope));
            bool ok = true;
            for (const auto& [atom, insts] : positives) {
                std::vector<Tuple> projs;
                for (const GroundRule* g : insts) projs.push_back(project(*g, pos, s.scope));
                if (std::any_of(projs.begin(), projs.end(), [&](const Tuple& t) { return s.plus.count(t) != 0; }))
                    continue;
                auto fresh = std::find_if(projs.begin(), projs.end(),
                                          [&](const Tuple& t) { return s.minus.count(t) == 0; });
                if (fresh == projs.end()) {
                    ok = false;
                    break;
                }
                s.plus.insert(*fresh);
            }
            if (ok) return s;

            std::size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return std::nullopt;
}

GroundAtom contrary_instance(const AssumptionDecl& d, const Tuple& values) {
    std::map<std::string, Term> sub;
    for (std::size_t i = 0; i < d.assumption.args.size(); ++i)
        sub[d.assumption.args[i].name] = Term::constant(values.at(i));
    const Atom c = substitute(d.contrary, sub);
    GroundAtom g{c.predicate, {}};
    for (const auto& t : c.args) g.args.push_back(t.name);
    return g;
}

bool pending(const LearnerState& state, const std::string& predicate) {
    return std::any_of(state.queue.begin(), state.queue.end(),
                       [&](std::size_t i) { return state.subproblems[i].predicate == predicate; });
}

}  // namespace

std::vector<std::size_t> assumption_step(LearnerState& state, std::size_t subproblem) {
    const SubProblem sp = state.subproblems.at(subproblem);
    const std::string& p = sp.predicate;
    const Mode mode = state.config.mode;
    std::vector<std::size_t> created;

    for (RuleId rid : rule_ids_for(state.framework, p)) {
        const Rule* rp = state.framework.find_rule(rid);
        if (!rp) continue;
        const Rule rule = *rp;

        const GroundFramework gf = ground(state.framework, state.config.semantics.grounding);
        const auto exts = stable_extensions(gf, state.config.semantics);
        const SupportIndex index(gf, state.config.semantics);

        std::map<GroundAtom, std::vector<const GroundRule*>> argued;
        for (const auto& g : gf.rules)
            if (g.source == rid &&
                std::all_of(g.body.begin(), g.body.end(), [&](const GroundAtom& b) { return index.derivable(b); }))
                argued[g.head].push_back(&g);

        std::vector<const GroundRule*> negatives;
        for (const auto& a : state.working.negatives)
            if (a.predicate == p && entails(exts, a, mode) && argued.count(a))
                negatives.insert(negatives.end(), argued[a].begin(), argued[a].end());
        if (negatives.empty()) continue;
        std::vector<std::pair<GroundAtom, std::vector<const GroundRule*>>> positives;
        for (const auto& a : state.working.positives)
            if (a.predicate == p && entails(exts, a, mode) && argued.count(a)) positives.emplace_back(a, argued[a]);

        const auto split = find_split(state.framework, rule, negatives, positives);
        if (!split) {
            state.notes.push_back("no assumption split for " + to_string(rule));
            continue;
        }

        const std::string key = canonical_key(rule, split->scope);
        AssumptionChoice choice = FreshAssumption{};
        auto known = state.introduced.find(key);
        const bool reuse = state.config.effective_policy() == DivergencePolicy::Reuse && known != state.introduced.end();
        if (reuse) choice = known->second;

        Transformed t = assumption_introduction(state.framework, rid, split->scope, choice);
        const AssumptionDecl decl =
            t.event.new_assumption ? *t.event.new_assumption : *state.framework.find_assumption(known->second);
        ExampleSets chi;
        for (const auto& tuple : split->minus) chi.positives.insert(contrary_instance(decl, tuple));
        for (const auto& tuple : split->plus) chi.negatives.insert(contrary_instance(decl, tuple));
        t.event.new_examples = chi;
        const RuleId extended = t.event.added.front().id;
        state.apply(std::move(t));
        state.introduced.emplace(key, decl.assumption.predicate);

        std::set<std::string> avoid;
        for (std::size_t j : split->body_atoms) avoid.insert(rule.body[j].predicate);

        const std::string chi_predicate = decl.contrary.predicate;
        ExampleSets fresh_examples;
        for (const auto& a : chi.positives)
            if (!state.retired.positives.count(a) && !state.retired.negatives.count(a) &&
                !state.working.negatives.count(a))
                fresh_examples.positives.insert(a);
        for (const auto& a : chi.negatives)
            if (!state.retired.positives.count(a) && !state.retired.negatives.count(a) &&
                !state.working.positives.count(a))
                fresh_examples.negatives.insert(a);
        state.working.positives.insert(fresh_examples.positives.begin(), fresh_examples.positives.end());
        state.working.negatives.insert(fresh_examples.negatives.begin(), fresh_examples.negatives.end());

        if (!reuse || ((!fresh_examples.positives.empty() || !fresh_examples.negatives.empty()) &&
                       !pending(state, chi_predicate))) {
            SubProblem child{chi_predicate, reuse ? fresh_examples : chi, subproblem, avoid, false};
            child.diverging = divergence_check(state, subproblem, child.examples);
            state.queue.push_back(state.subproblems.size());
            created.push_back(state.subproblems.size());
            state.subproblems.push_back(std::move(child));
        } else if (reuse) {
            for (std::size_t i : state.queue)
                if (state.subproblems[i].predicate == chi_predicate) {
                    auto& ex = state.subproblems[i].examples;
                    ex.positives.insert(fresh_examples.positives.begin(), fresh_examples.positives.end());
                    ex.negatives.insert(fresh_examples.negatives.begin(), fresh_examples.negatives.end());
                }
        }

        if (reuse) {
            // A rule with exactly this body already exists: fold the whole body into its head.
            const Rule target = *state.framework.find_rule(extended);
            for (const auto& f : state.framework.rules()) {
                if (f.id == extended || f.head.predicate == p || f.equalities.size() != target.equalities.size() ||
                    f.body.size() != target.body.size())
                    continue;
                FoldPartition all;
                for (std::size_t i = 0; i < target.equalities.size(); ++i) all.target_equalities.push_back(i);
                for (std::size_t i = 0; i < target.body.size(); ++i) all.target_body.push_back(i);
                if (fold_rule(target, f, all)) {
                    state.apply(fold(state.framework, extended, f.id, all));
                    break;
                }
            }
        }
    }
    return created;
}

void retire_examples(LearnerState& state, const std::string& predicate) {
    for (auto* from : {&state.working.positives, &state.working.negatives}) {
        auto* to = from == &state.working.positives ? &state.retired.positives : &state.retired.negatives;
        for (auto it = from->begin(); it != from->end();) {
            if (it->predicate == predicate) {
                to->insert(*it);
                it = from->erase(it);
            } else {
                ++it;
            }
        }
    }
}

LearnResult learn(const LearningProblem& problem, const StrategyConfig& config) {
    LearnerState state = start(problem, config);
    std::size_t iterations = 0;
    while (!state.queue.empty() && iterations < config.max_iterations) {
        const std::size_t idx = state.queue.front();
        state.queue.pop_front();
        ++iterations;
        const SubProblem sp = state.subproblems[idx];
        const bool has_positive =
            std::any_of(state.working.positives.begin(), state.working.positives.end(),
                        [&](const GroundAtom& a) { return a.predicate == sp.predicate; });
        if (has_positive) {
            const auto rote = rote_step(state, sp.predicate);
            if (sp.diverging && config.effective_policy() == DivergencePolicy::RoteFallback) {
                state.notes.push_back("diverging on " + sp.predicate + ", kept rote rules");
            } else {
                generalise_step(state, idx, rote);
                assumption_step(state, idx);
            }
        }
        retire_examples(state, sp.predicate);
    }

    LearnResult result;
    result.goal_report = goal_check(state.framework, problem.examples, config.mode, config.semantics);
    if (!state.queue.empty()) {
        result.status = LearnStatus::IterationCap;
        result.message = "stopped after " + std::to_string(iterations) + " iterations with " +
                         std::to_string(state.queue.size()) + " subproblems pending";
    } else if (result.goal_report.holds()) {
        result.status = LearnStatus::Converged;
    } else {
        result.status = LearnStatus::Failed;
        result.message = "goal not met under " + std::string(to_string(config.mode)) + " reasoning";
    }
    for (const auto& n : state.notes) {
        if (!result.message.empty()) result.message += "; ";
        result.message += n;
    }
    result.framework = std::move(state.framework);
    result.trace = std::move(state.trace);
    result.subproblems = std::move(state.subproblems);
    return result;
}

}  // namespace aba
