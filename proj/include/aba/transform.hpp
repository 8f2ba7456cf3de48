#pragma once

// The five transformation rules as pure framework-to-framework steps. Every
// step returns the new framework with a trace event describing the delta.

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "aba/core.hpp"
#include "aba/semantics.hpp"

namespace aba {

enum class RuleName { RoteLearning, EqualityRemoval, Folding, Subsumption, AssumptionIntroduction };

std::string_view to_string(RuleName r);
std::optional<RuleName> rule_name_from_string(std::string_view s);

struct ExampleSets {
    std::set<GroundAtom> positives;
    std::set<GroundAtom> negatives;

    bool operator==(const ExampleSets&) const = default;
};

struct TraceEvent {
    RuleName rule = RuleName::RoteLearning;
    std::string target_predicate;
    std::vector<Rule> removed;
    std::vector<Rule> added;
    std::optional<AssumptionDecl> new_assumption;
    std::optional<ExampleSets> new_examples;
};

struct Trace {
    /// Constants added to the universe before the first event.
    std::set<std::string> constants;
    std::vector<TraceEvent> events;
};

struct Transformed {
    Framework framework;
    TraceEvent event;
};

/// R1: adds p(X) <- X = t.
Transformed rote_learn(const Framework& fw, const GroundAtom& example);

/// R2: drops one equality from a rule.
Transformed equality_removal(const Framework& fw, RuleId rule, const Equality& equality);

/// Which parts of the target a fold replaces: indices into the target's
/// equalities (Eqs1) and body (B1).
struct FoldPartition {
    std::vector<std::size_t> target_equalities;
    std::vector<std::size_t> target_body;

    auto operator<=>(const FoldPartition&) const = default;
};

/// Partitions under which `folder` folds `target`, in search order.
std::vector<FoldPartition> fold_partitions(const Rule& target, const Rule& folder);

/// The rule a fold would produce, or nothing if the partition does not match
/// or the side condition fails.
std::optional<Rule> fold_rule(const Rule& target, const Rule& folder, const FoldPartition& partition);

/// R3: replaces target by H <- Eqs2, K, B2. Target equalities outside Eqs1 are
/// kept, and the side condition covers them as well.
Transformed fold(const Framework& fw, RuleId target, RuleId folder, const FoldPartition& partition);

/// Syntactic subsumption: some substitution maps keeper's head onto victim's
/// and its body into victim's body, with keeper's equalities implied by victim's.
bool theta_subsumes(const Rule& keeper, const Rule& victim);

/// R4 condition, checked over ground instances and minimal argument supports
/// in the framework without the victim.
bool subsumes(const Framework& fw, RuleId keeper, RuleId victim, const SemanticsConfig& config = {});

/// R4: deletes the victim. Throws TransformError unless subsumes() holds.
Transformed remove_subsumed(const Framework& fw, RuleId keeper, RuleId victim,
                            const SemanticsConfig& config = {});

struct FreshAssumption {};
/// Fresh assumption, or the predicate of a declared one.
using AssumptionChoice = std::variant<FreshAssumption, std::string>;

/// Smallest k such that alpha_k and c_alpha_k are unused.
std::string fresh_assumption_name(const Framework& fw);

/// R5: appends alpha(scope) to a rule's body. Scope names variables of the rule.
Transformed assumption_introduction(const Framework& fw, RuleId rule, const std::vector<std::string>& scope,
                                    const AssumptionChoice& choice = FreshAssumption{});

/// Applies a recorded delta, keeping the recorded rule ids.
Framework apply_event(const Framework& fw, const TraceEvent& event);

Framework replay(const Framework& background, const Trace& trace);

}  // namespace aba
