#pragma once

// Terms, atoms, normalised rules and flat ABA frameworks over a finite universe.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aba/error.hpp"

namespace aba {

/// Name of the built-in predicate that holds for every element of the universe.
inline constexpr std::string_view kTruePredicate = "true";

/// Variables start with an uppercase letter or '_'; everything else is a constant.
bool is_variable_name(std::string_view name);

struct Term {
    enum class Kind : std::uint8_t { Constant, Variable };

    Kind kind = Kind::Constant;
    std::string name;

    static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
    static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }

    bool is_variable() const noexcept { return kind == Kind::Variable; }
    bool is_constant() const noexcept { return kind == Kind::Constant; }

    auto operator<=>(const Term&) const = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const noexcept { return args.size(); }
    auto operator<=>(const Atom&) const = default;
};

struct Equality {
    Term left;
    Term right;

    auto operator<=>(const Equality&) const = default;
};

struct RuleId {
    std::uint32_t value = 0;
    auto operator<=>(const RuleId&) const = default;
};

/// A rule `head <- equalities, body`. Values produced by `normalise` are in
/// canonical normal form: every atom argument is a variable, no variable repeats
/// inside one atom, variables are named V0, V1, ... by first occurrence, and
/// equalities are oriented and sorted.
struct Rule {
    RuleId id;
    Atom head;
    std::vector<Equality> equalities;
    std::vector<Atom> body;

    /// Equal up to the rule id.
    bool same_shape(const Rule& other) const {
        return head == other.head && equalities == other.equalities && body == other.body;
    }
};

/// `assumption alpha(V0..Vk) contrary chi(...)`; the contrary's arguments are
/// drawn from the assumption's variables.
struct AssumptionDecl {
    Atom assumption;
    Atom contrary;

    auto operator<=>(const AssumptionDecl&) const = default;
};

struct GroundAtom {
    std::string predicate;
    std::vector<std::string> args;

    auto operator<=>(const GroundAtom&) const = default;
};

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Equality& e);
std::string to_string(const Rule& r);
std::string to_string(const AssumptionDecl& d);
std::string to_string(const GroundAtom& a);

/// Puts a rule into canonical normal form. Logically equivalent under the
/// equality axioms; idempotent.
Rule normalise(Rule raw);

/// Canonical form of an assumption declaration (variables renamed V0..).
AssumptionDecl normalise(AssumptionDecl raw);

/// Variables of a rule in first-occurrence order (head, body, equalities).
std::vector<std::string> rule_variables(const Rule& r);
std::set<std::string> head_variables(const Rule& r);
/// Variables that occur in some body atom.
std::set<std::string> body_variables(const Rule& r);
std::set<std::string> rule_constants(const Rule& r);
/// True iff the rule has an equality mentioning a constant.
bool has_constants(const Rule& r);

/// Substitutes ground values for variables; unmapped variables are kept.
Atom substitute(const Atom& a, const std::map<std::string, Term>& sub);
Equality substitute(const Equality& e, const std::map<std::string, Term>& sub);

class FrameworkBuilder;

/// Flat ABA framework <R, A, contrary> with the language left implicit.
/// Immutable after construction; build or modify through FrameworkBuilder.
class Framework {
public:
    Framework() = default;

    /// Rules ordered by id.
    const std::vector<Rule>& rules() const noexcept { return rules_; }
    /// Assumption declarations ordered by predicate.
    const std::vector<AssumptionDecl>& assumptions() const noexcept { return assumptions_; }
    const std::set<std::string>& universe() const noexcept { return universe_; }

    const Rule* find_rule(RuleId id) const;
    const AssumptionDecl* find_assumption(std::string_view predicate) const;
    bool is_assumption_predicate(std::string_view predicate) const {
        return find_assumption(predicate) != nullptr;
    }
    std::vector<const Rule*> rules_for(std::string_view head_predicate) const;

    /// Every predicate name occurring anywhere in the framework.
    std::set<std::string> predicates() const;
    /// Universe constants that occur in no rule.
    std::set<std::string> extra_constants() const;

    RuleId next_rule_id() const noexcept { return next_id_; }

    /// Same rules (ignoring ids), assumptions and universe.
    bool structurally_equal(const Framework& other) const;

private:
    friend class FrameworkBuilder;

    std::vector<Rule> rules_;
    std::vector<AssumptionDecl> assumptions_;
    std::set<std::string> universe_;
    RuleId next_id_{0};
};

class FrameworkBuilder {
public:
    FrameworkBuilder() = default;
    explicit FrameworkBuilder(Framework base);

    /// Normalises the rule and assigns the next free id.
    RuleId add_rule(Rule rule);
    /// Keeps the rule's id; replaces nothing.
    void add_rule_with_id(Rule rule);
    bool remove_rule(RuleId id);
    void add_assumption(AssumptionDecl decl);
    void add_constant(std::string c);

    const Framework& peek() const noexcept { return fw_; }
    Framework build() &&;

private:
    Framework fw_;
};

struct Violation {
    enum class Kind {
        Flatness,
        ArityConflict,
        UndeclaredContrary,
        ConstantOutsideUniverse,
        MalformedRule,
        MalformedAssumption,
        ReservedPredicate,
    };
    Kind kind;
    std::string message;
};

std::string_view to_string(Violation::Kind k);

/// Reports every flatness violation, arity conflict, malformed declaration and
/// constant outside the universe. Empty result means the framework is valid.
std::vector<Violation> validate(const Framework& fw);

/// Throws ValidationError if validate() reports anything.
void require_valid(const Framework& fw);

/// Renames predicates throughout the framework.
Framework rename_predicates(const Framework& fw, const std::map<std::string, std::string>& names);

/// Structural equality after some bijective renaming of assumption predicates
/// together with their contraries, provided the contraries are not predicates
/// shared by both frameworks under different names.
bool equal_modulo_assumption_renaming(const Framework& a, const Framework& b);

// ---------------------------------------------------------------------------
// Grounding

struct GroundRule {
    RuleId source;
    GroundAtom head;
    std::vector<GroundAtom> body;
    /// Values of rule_variables(source rule), in order.
    std::vector<std::string> bindings;
};

struct GroundFramework {
    std::vector<GroundRule> rules;
    /// Sorted, unique.
    std::vector<GroundAtom> assumptions;
    std::map<GroundAtom, GroundAtom> contrary;
    std::set<std::string> universe;

    bool is_assumption(const GroundAtom& a) const { return contrary.count(a) != 0; }
    const GroundAtom& contrary_of(const GroundAtom& assumption) const;
};

struct GroundingLimits {
    std::size_t max_instances = 2'000'000;
};

/// All ground instances of every rule over the universe, with equalities
/// evaluated away, plus every ground assumption instance. `true/1` body atoms
/// hold for every universe constant and are dropped.
GroundFramework ground(const Framework& fw, const GroundingLimits& limits = {});

/// Ground instances of a single rule over a universe.
std::vector<GroundRule> ground_rule(const Rule& r, const std::set<std::string>& universe,
                                    const GroundingLimits& limits = {});

}  // namespace aba
