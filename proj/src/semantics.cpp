#include "aba/semantics.hpp"

#include <algorithm>
#include <deque>

namespace aba {

std::string_view to_string(Mode m) { return m == Mode::Credulous ? "credulous" : "sceptical"; }

std::optional<Mode> mode_from_string(std::string_view s) {
    if (s == "credulous") return Mode::Credulous;
    if (s == "sceptical" || s == "skeptical") return Mode::Sceptical;
    return std::nullopt;
}

namespace {

// Ground framework with interned atoms and counter-based forward chaining.
class IndexedFramework {
public:
    explicit IndexedFramework(const GroundFramework& gf) {
        for (const auto& r : gf.rules) {
            Rule_ ir{intern(r.head), {}};
            for (const auto& b : r.body) ir.body.push_back(intern(b));
            rules_.push_back(std::move(ir));
        }
        for (const auto& a : gf.assumptions) {
            assumption_.push_back(intern(a));
            contrary_.push_back(intern(gf.contrary_of(a)));
        }
        watchers_.resize(atoms_.size());
        for (std::size_t i = 0; i < rules_.size(); ++i)
            for (int b : rules_[i].body) watchers_[static_cast<std::size_t>(b)].push_back(i);
    }

    std::vector<char> closure(const std::vector<int>& seeds) const {
        std::vector<char> truth(atoms_.size(), 0);
        std::vector<std::size_t> missing(rules_.size());
        std::deque<int> queue;
        auto set_true = [&](int a) {
            if (!truth[static_cast<std::size_t>(a)]) {
                truth[static_cast<std::size_t>(a)] = 1;
                queue.push_back(a);
            }
        };
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            missing[i] = rules_[i].body.size();
            if (missing[i] == 0) set_true(rules_[i].head);
        }
        for (int s : seeds) set_true(s);
        while (!queue.empty()) {
            const int a = queue.front();
            queue.pop_front();
            for (std::size_t r : watchers_[static_cast<std::size_t>(a)])
                if (--missing[r] == 0) set_true(rules_[r].head);
        }
        return truth;
    }

    struct Rule_ {
        int head;
        std::vector<int> body;
    };

    const std::vector<GroundAtom>& atoms() const { return atoms_; }
    const std::vector<Rule_>& rules() const { return rules_; }
    const std::vector<int>& assumption_atoms() const { return assumption_; }
    const std::vector<int>& contrary_atoms() const { return contrary_; }

private:
    int intern(const GroundAtom& a) {
        auto [it, inserted] = index_.emplace(a, static_cast<int>(atoms_.size()));
        if (inserted) atoms_.push_back(a);
        return it->second;
    }

    std::map<GroundAtom, int> index_;
    std::vector<GroundAtom> atoms_;
    std::vector<Rule_> rules_;
    std::vector<std::vector<std::size_t>> watchers_;
    std::vector<int> assumption_;
    std::vector<int> contrary_;
};

std::vector<AssumptionSet> minimise(std::vector<AssumptionSet> sets) {
    std::sort(sets.begin(), sets.end(),
              [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    std::vector<AssumptionSet> out;
    for (auto& s : sets) {
        bool dominated = std::any_of(out.begin(), out.end(), [&](const AssumptionSet& k) {
            return std::includes(s.begin(), s.end(), k.begin(), k.end());
        });
        if (!dominated) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

AtomSet consequences(const GroundFramework& gf, const AssumptionSet& assumed) {
    IndexedFramework idx(gf);
    std::vector<int> seeds;
    const auto& as = idx.assumption_atoms();
    for (std::size_t i = 0; i < gf.assumptions.size(); ++i)
        if (assumed.count(gf.assumptions[i])) seeds.push_back(as[i]);
    auto truth = idx.closure(seeds);
    AtomSet out;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i]) out.insert(idx.atoms()[i]);
    // Assumed atoms outside the framework's declared instances still hold trivially.
    for (const auto& a : assumed) out.insert(a);
    return out;
}

std::vector<Argument> arguments_for(const GroundFramework& gf, const GroundAtom& claim,
                                    const SemanticsConfig& config) {
    std::map<GroundAtom, std::vector<std::size_t>> by_head;
    for (std::size_t i = 0; i < gf.rules.size(); ++i) by_head[gf.rules[i].head].push_back(i);

    std::size_t produced = 0;
    auto bump = [&](std::size_t n) {
        produced += n;
        if (produced > config.argument_budget)
            throw BudgetExceeded("arguments for " + to_string(claim), produced, config.argument_budget);
    };

    std::set<GroundAtom> path;
    auto rec = [&](auto&& self, const GroundAtom& atom) -> std::set<Argument> {
        std::set<Argument> out;
        if (gf.is_assumption(atom)) {
            out.insert(Argument{atom, {atom}, {}, std::nullopt});
            bump(1);
            return out;
        }
        auto it = by_head.find(atom);
        if (it == by_head.end()) return out;
        path.insert(atom);
        for (std::size_t ri : it->second) {
            const GroundRule& r = gf.rules[ri];
            if (std::any_of(r.body.begin(), r.body.end(),
                            [&](const GroundAtom& b) { return path.count(b) != 0; }))
                continue;
            // Partial products of child arguments: (support, rules).
            std::vector<std::pair<AssumptionSet, std::set<std::size_t>>> partial{{{}, {ri}}};
            for (const auto& b : r.body) {
                auto children = self(self, b);
                if (children.empty()) {
                    partial.clear();
                    break;
                }
                std::vector<std::pair<AssumptionSet, std::set<std::size_t>>> next;
                for (const auto& [s, rs] : partial) {
                    for (const auto& c : children) {
                        AssumptionSet s2 = s;
                        s2.insert(c.support.begin(), c.support.end());
                        std::set<std::size_t> r2 = rs;
                        r2.insert(c.rules.begin(), c.rules.end());
                        next.emplace_back(std::move(s2), std::move(r2));
                    }
                }
                bump(next.size());
                partial = std::move(next);
            }
            for (auto& [s, rs] : partial) out.insert(Argument{atom, std::move(s), std::move(rs), ri});
        }
        path.erase(atom);
        return out;
    };
    auto found = rec(rec, claim);
    return {found.begin(), found.end()};
}

bool attacks(const GroundFramework& gf, const Argument& attacker, const Argument& target) {
    return std::any_of(target.support.begin(), target.support.end(), [&](const GroundAtom& a) {
        auto it = gf.contrary.find(a);
        return it != gf.contrary.end() && it->second == attacker.claim;
    });
}

SupportIndex::SupportIndex(const GroundFramework& gf, const SemanticsConfig& config) {
    for (const auto& a : gf.assumptions) supports_[a] = {{a}};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : gf.rules) {
            std::vector<AssumptionSet> combos{{}};
            bool ok = true;
            for (const auto& b : r.body) {
                auto it = supports_.find(b);
                if (it == supports_.end() || it->second.empty()) {
                    ok = false;
                    break;
                }
                std::vector<AssumptionSet> next;
                for (const auto& s : combos) {
                    for (const auto& t : it->second) {
                        AssumptionSet u = s;
                        u.insert(t.begin(), t.end());
                        next.push_back(std::move(u));
                    }
                }
                combos = minimise(std::move(next));
                if (combos.size() > config.argument_budget)
                    throw BudgetExceeded("minimal supports of " + to_string(r.head), combos.size(),
                                         config.argument_budget);
            }
            if (!ok) continue;
            auto& head = supports_[r.head];
            std::vector<AssumptionSet> merged = head;
            merged.insert(merged.end(), combos.begin(), combos.end());
            merged = minimise(std::move(merged));
            if (merged != head) {
                head = std::move(merged);
                changed = true;
            }
        }
    }
}

const std::vector<AssumptionSet>& SupportIndex::supports(const GroundAtom& a) const {
    static const std::vector<AssumptionSet> none;
    auto it = supports_.find(a);
    return it == supports_.end() ? none : it->second;
}

std::vector<StableExtension> stable_extensions(const GroundFramework& gf, const SemanticsConfig& config) {
    IndexedFramework idx(gf);
    const auto& as = idx.assumption_atoms();
    const auto& cs = idx.contrary_atoms();
    const std::size_t n_atoms = idx.atoms().size();
    const std::size_t n = as.size();

    // Upper bound of everything derivable.
    const std::vector<char> possible = idx.closure(as);

    std::vector<char> in_relevant_body(n_atoms, 0);
    for (const auto& r : idx.rules()) {
        if (std::all_of(r.body.begin(), r.body.end(),
                        [&](int b) { return possible[static_cast<std::size_t>(b)] != 0; }))
            for (int b : r.body) in_relevant_body[static_cast<std::size_t>(b)] = 1;
    }
    std::vector<char> is_assumption(n_atoms, 0), is_contrary(n_atoms, 0);
    for (std::size_t i = 0; i < n; ++i) {
        is_assumption[static_cast<std::size_t>(as[i])] = 1;
        is_contrary[static_cast<std::size_t>(cs[i])] = 1;
    }

    // Assumptions whose contrary can never be derived are in every extension;
    // assumptions that feed no applicable rule are decided by their contrary.
    std::vector<std::size_t> forced, guessed, decided;
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = static_cast<std::size_t>(as[i]);
        const auto c = static_cast<std::size_t>(cs[i]);
        const bool entangled = is_assumption[c] || is_contrary[a];
        if (!entangled && !possible[c])
            forced.push_back(i);
        else if (entangled || in_relevant_body[a])
            guessed.push_back(i);
        else
            decided.push_back(i);
    }
    if (guessed.size() > config.assumption_budget || guessed.size() >= 63)
        throw BudgetExceeded("ground assumptions to enumerate", guessed.size(), config.assumption_budget);

    std::vector<StableExtension> out;
    const std::uint64_t limit = std::uint64_t{1} << guessed.size();
    std::vector<int> seeds;
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        seeds.clear();
        for (std::size_t i : forced) seeds.push_back(as[i]);
        for (std::size_t g = 0; g < guessed.size(); ++g)
            if (mask >> g & 1) seeds.push_back(as[guessed[g]]);
        std::vector<char> truth = idx.closure(seeds);

        bool stable = true;
        for (std::size_t g = 0; g < guessed.size() && stable; ++g) {
            const bool member = (mask >> g & 1) != 0;
            const bool attacked = truth[static_cast<std::size_t>(cs[guessed[g]])] != 0;
            stable = member != attacked;
        }
        if (!stable) continue;

        StableExtension ext;
        std::vector<std::size_t> members;
        for (std::size_t i : forced) members.push_back(i);
        for (std::size_t g = 0; g < guessed.size(); ++g)
            if (mask >> g & 1) members.push_back(guessed[g]);
        for (std::size_t i : decided)
            if (!truth[static_cast<std::size_t>(cs[i])]) {
                members.push_back(i);
                truth[static_cast<std::size_t>(as[i])] = 1;
            }
        for (std::size_t i : members) ext.assumptions.insert(gf.assumptions[i]);
        for (std::size_t i = 0; i < n_atoms; ++i)
            if (truth[i]) ext.claims.insert(idx.atoms()[i]);
        out.push_back(std::move(ext));
    }
    std::sort(out.begin(), out.end(),
              [](const StableExtension& a, const StableExtension& b) { return a.assumptions < b.assumptions; });
    return out;
}

std::vector<StableExtension> stable_extensions(const Framework& fw, const SemanticsConfig& config) {
    return stable_extensions(ground(fw, config.grounding), config);
}

bool entails(const std::vector<StableExtension>& extensions, const GroundAtom& atom, Mode mode) {
    auto has = [&](const StableExtension& e) { return e.claims.count(atom) != 0; };
    if (mode == Mode::Credulous) return std::any_of(extensions.begin(), extensions.end(), has);
    return !extensions.empty() && std::all_of(extensions.begin(), extensions.end(), has);
}

bool entails(const Framework& fw, const GroundAtom& atom, Mode mode, const SemanticsConfig& config) {
    return entails(stable_extensions(fw, config), atom, mode);
}

bool covers(const Framework& fw, const GroundAtom& example, Mode mode, const SemanticsConfig& config) {
    return entails(fw, example, mode, config);
}

}  // namespace aba
