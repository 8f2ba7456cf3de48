#pragma once

// Normal logic programs with negation as failure, the ABA to LP mapping, and
// brute-force stable models via the Gelfond-Lifschitz reduct.

#include <set>
#include <string>
#include <vector>

#include "aba/core.hpp"
#include "aba/semantics.hpp"

namespace aba {

struct LpRule {
    Atom head;
    std::vector<Equality> equalities;
    std::vector<Atom> positive_body;
    std::vector<Atom> negative_body;
};

struct LogicProgram {
    std::vector<LpRule> rules;
    std::set<std::string> universe;

    /// All ground atoms over the program's predicates and universe.
    std::set<GroundAtom> herbrand_base() const;
};

struct GroundLpRule {
    GroundAtom head;
    std::vector<GroundAtom> positive_body;
    std::vector<GroundAtom> negative_body;
};

struct LpConfig {
    /// Maximum number of atoms whose truth has to be guessed.
    std::size_t atom_budget = 20;
    GroundingLimits grounding;
};

/// Replaces every body assumption by `not` its contrary. Rule order is kept.
LogicProgram to_logic_program(const Framework& fw);

/// Ground instances over the universe; equalities are evaluated away.
std::vector<GroundLpRule> ground_program(const LogicProgram& lp, const LpConfig& config = {});

/// Least model of a program whose negative bodies are ignored.
std::set<GroundAtom> least_model(const std::vector<GroundLpRule>& rules);

/// Reduct of a ground program with respect to an interpretation.
std::vector<GroundLpRule> reduct(const std::vector<GroundLpRule>& rules, const std::set<GroundAtom>& m);

/// Every M with M = least_model(reduct(P, M)), in lexicographic order.
std::vector<std::set<GroundAtom>> stable_models(const LogicProgram& lp, const LpConfig& config = {});

/// `h :- b1, not b2.` one rule per line.
std::string to_text(const LogicProgram& lp);

struct CrossCheckReport {
    bool match = false;
    std::size_t extension_count = 0;
    std::size_t model_count = 0;
    std::string detail;
};

/// Compares extension claim sets (without assumption atoms, which have no
/// counterpart in the program) with the stable models of the mapped program.
CrossCheckReport cross_check(const Framework& fw, const SemanticsConfig& semantics = {},
                             const LpConfig& lp = {});

}  // namespace aba
