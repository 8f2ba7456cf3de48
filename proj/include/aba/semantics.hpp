#pragma once

// Arguments, attacks and stable extensions of flat ABA frameworks, computed at
// the level of assumption sets.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "aba/core.hpp"

namespace aba {

using AtomSet = std::set<GroundAtom>;
using AssumptionSet = std::set<GroundAtom>;

/// An argument for `claim`. `rules` and `top_rule` index GroundFramework::rules;
/// `top_rule` is empty iff the claim is itself an assumption.
struct Argument {
    GroundAtom claim;
    AssumptionSet support;
    std::set<std::size_t> rules;
    std::optional<std::size_t> top_rule;

    auto operator<=>(const Argument&) const = default;
};

struct StableExtension {
    AssumptionSet assumptions;
    /// Claims of all arguments supported by `assumptions`.
    AtomSet claims;

    bool operator==(const StableExtension&) const = default;
};

enum class Mode { Credulous, Sceptical };

std::string_view to_string(Mode m);
std::optional<Mode> mode_from_string(std::string_view s);

struct SemanticsConfig {
    /// Maximum number of ground assumptions whose membership has to be guessed.
    std::size_t assumption_budget = 24;
    std::size_t argument_budget = 100'000;
    GroundingLimits grounding;
};

/// Least set containing `assumed` and closed under the ground rules.
AtomSet consequences(const GroundFramework& gf, const AssumptionSet& assumed);

/// All acyclic arguments for a ground atom (no atom repeats on a root-to-leaf
/// path). Empty when the atom is underivable.
std::vector<Argument> arguments_for(const GroundFramework& gf, const GroundAtom& claim,
                                    const SemanticsConfig& config = {});

/// True iff the attacker's claim is the contrary of a member of the target's support.
bool attacks(const GroundFramework& gf, const Argument& attacker, const Argument& target);

/// Minimal assumption supports of every derivable atom, by fixpoint iteration.
class SupportIndex {
public:
    explicit SupportIndex(const GroundFramework& gf, const SemanticsConfig& config = {});

    /// Antichain of minimal supports; empty when no argument exists.
    const std::vector<AssumptionSet>& supports(const GroundAtom& a) const;
    bool derivable(const GroundAtom& a) const { return !supports(a).empty(); }

private:
    std::map<GroundAtom, std::vector<AssumptionSet>> supports_;
};

/// Stable extensions in a deterministic order (by assumption set).
std::vector<StableExtension> stable_extensions(const GroundFramework& gf,
                                               const SemanticsConfig& config = {});
std::vector<StableExtension> stable_extensions(const Framework& fw,
                                               const SemanticsConfig& config = {});

/// Credulous: in the claims of some extension. Sceptical: there is at least
/// one extension and the atom is in the claims of all of them.
bool entails(const std::vector<StableExtension>& extensions, const GroundAtom& atom, Mode mode);
bool entails(const Framework& fw, const GroundAtom& atom, Mode mode,
             const SemanticsConfig& config = {});

/// Coverage of an example; same as entails.
inline bool covers(const std::vector<StableExtension>& extensions, const GroundAtom& example,
                   Mode mode) {
    return entails(extensions, example, mode);
}
bool covers(const Framework& fw, const GroundAtom& example, Mode mode,
            const SemanticsConfig& config = {});

}  // namespace aba
