#pragma once

// The learning loop: rote learn, generalise, introduce assumptions and retire
// examples, one predicate at a time, with divergence detection.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aba/core.hpp"
#include "aba/semantics.hpp"
#include "aba/transform.hpp"

namespace aba {

enum class DivergencePolicy { RoteFallback, Reuse };

std::string_view to_string(DivergencePolicy p);
std::optional<DivergencePolicy> divergence_policy_from_string(std::string_view s);

struct StrategyConfig {
    Mode mode = Mode::Credulous;
    std::size_t max_iterations = 10;
    /// Lets assumption introduction reuse an assumption introduced earlier for
    /// a rule with the same body. Implies DivergencePolicy::Reuse.
    bool allow_assumption_reuse = false;
    DivergencePolicy divergence_policy = DivergencePolicy::RoteFallback;
    std::size_t fold_search_depth = 4;
    SemanticsConfig semantics;

    DivergencePolicy effective_policy() const {
        return allow_assumption_reuse ? DivergencePolicy::Reuse : divergence_policy;
    }
};

struct LearningProblem {
    Framework background;
    ExampleSets examples;
};

/// Throws ValidationError for an invalid background, no positives, or
/// overlapping example sets.
void validate_problem(const LearningProblem& problem);

struct ExampleReport {
    GroundAtom atom;
    bool positive = false;
    /// Entailed under the report's mode.
    bool covered = false;
    /// Member of the claims of the witness extension (credulous mode only).
    bool in_witness = false;
};

struct GoalReport {
    Mode mode = Mode::Credulous;
    bool existence = false;
    bool completeness = false;
    bool consistency = false;
    std::size_t extension_count = 0;
    std::vector<ExampleReport> examples;

    bool holds() const { return existence && completeness && consistency; }
};

/// Sceptical: every positive is in all extensions and no negative is.
/// Credulous: a single witness extension contains every positive and no
/// negative; the witness maximises positives, then minimises negatives.
GoalReport goal_check(const Framework& fw, const ExampleSets& examples, Mode mode,
                      const SemanticsConfig& config = {});

struct SubProblem {
    std::string predicate;
    ExampleSets examples;
    std::optional<std::size_t> parent;
    /// Head predicates never used as folders for this subproblem.
    std::set<std::string> avoid_predicates;
    bool diverging = false;
};

enum class LearnStatus { Converged, IterationCap, Failed };

std::string_view to_string(LearnStatus s);

struct LearnResult {
    Framework framework;
    Trace trace;
    GoalReport goal_report;
    LearnStatus status = LearnStatus::Failed;
    std::string message;
    std::vector<SubProblem> subproblems;
};

struct LearnerState {
    StrategyConfig config;
    std::set<RuleId> background_rules;
    Framework framework;
    Trace trace;
    ExampleSets working;
    ExampleSets retired;
    std::vector<SubProblem> subproblems;
    std::deque<std::size_t> queue;
    /// Canonical (equalities, body, scope) of every rule extended by R5, with
    /// the assumption predicate used.
    std::map<std::string, std::string> introduced;
    std::vector<std::string> notes;

    void apply(Transformed t);
};

/// Initial state: example constants added to the universe, one subproblem per
/// example predicate, queued in name order.
LearnerState start(const LearningProblem& problem, const StrategyConfig& config);

/// Step 1. Returns the ids of the added rules.
std::vector<RuleId> rote_step(LearnerState& state, const std::string& predicate);

/// Step 2 over the given rote rules of the subproblem's predicate.
void generalise_step(LearnerState& state, std::size_t subproblem, const std::vector<RuleId>& rote_rules);

/// Step 3 for the subproblem. Returns indices of the subproblems it created.
std::vector<std::size_t> assumption_step(LearnerState& state, std::size_t subproblem);

/// Step 4.
void retire_examples(LearnerState& state, const std::string& predicate);

/// True iff the candidate examples equal those of the subproblem or one of its
/// ancestors after forgetting predicate names.
bool divergence_check(const LearnerState& state, std::size_t subproblem, const ExampleSets& candidate);

LearnResult learn(const LearningProblem& problem, const StrategyConfig& config = {});

}  // namespace aba
