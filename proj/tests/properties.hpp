#pragma once

// Randomized property checks shared by the property suite and the acceptance
// driver. Each check reports how many cases it ran and how many failed.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aba/frontend.hpp"
#include "aba/semantics.hpp"
#include "aba/transform.hpp"
#include "oracle.hpp"

namespace props {

using namespace aba;

struct Result {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    void fail(const std::string& detail) {
        if (failures++ == 0) first_failure = detail;
    }
};

struct Signature {
    std::string name;
    std::size_t arity;
};

class Generator {
public:
    explicit Generator(std::uint32_t seed) : rng_(seed) {}

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    // Small valid frameworks: at most two assumption schemata of arity <= 1
    // over two or three constants.
    Framework framework() {
        const std::vector<Signature> plain{{"p", pick(3)}, {"q", pick(2) + 1}, {"r", pick(2) + 1}, {"s", 0}};
        constants_.clear();
        for (std::size_t i = 0, n = pick(2) + 2; i < n; ++i) constants_.push_back("c" + std::to_string(i));

        FrameworkBuilder b;
        for (const auto& c : constants_) b.add_constant(c);
        std::vector<Signature> body_preds = plain;
        std::vector<std::pair<Signature, Signature>> decls;
        for (std::size_t i = 0, n = pick(3); i < n; ++i) {
            const Signature a{"a" + std::to_string(i), pick(2)};
            std::vector<const Signature*> targets;
            for (const auto& p : plain)
                if (p.arity == a.arity) targets.push_back(&p);
            if (targets.empty()) continue;
            const Signature& c = *targets[pick(targets.size())];
            b.add_assumption(AssumptionDecl{schema(a), schema(c)});
            body_preds.push_back(a);
            decls.emplace_back(a, c);
        }
        // Attacks between schemata, so that several extensions are common.
        for (const auto& [a, c] : decls)
            for (const auto& [other, unused] : decls)
                if (other.name != a.name && coin()) {
                    Rule r;
                    r.head = atom(c);
                    r.body.push_back(atom(other));
                    b.add_rule(std::move(r));
                }
        for (std::size_t i = 0, n = pick(6) + 2; i < n; ++i) {
            Rule r;
            r.head = atom(plain[pick(plain.size())]);
            for (std::size_t j = 0, m = pick(3); j < m; ++j) r.body.push_back(atom(body_preds[pick(body_preds.size())]));
            std::vector<std::string> vars;
            for (const auto& v : rule_variables(r)) vars.push_back(v);
            for (std::size_t j = 0, m = vars.empty() ? 0 : pick(2); j < m; ++j) {
                const Term right = coin(0.5) ? Term::constant(constants_[pick(constants_.size())])
                                             : Term::variable(vars[pick(vars.size())]);
                r.equalities.push_back({Term::variable(vars[pick(vars.size())]), right});
            }
            b.add_rule(std::move(r));
        }
        return std::move(b).build();
    }

    AtomSet subset(const std::vector<GroundAtom>& items) {
        AtomSet s;
        for (const auto& a : items)
            if (coin()) s.insert(a);
        return s;
    }

    // A random applicable transformation, or nothing.
    std::optional<Transformed> step(const Framework& fw) {
        const auto& rules = fw.rules();
        switch (pick(4)) {
            case 0: {
                if (fw.universe().empty()) return std::nullopt;
                const std::vector<std::string> cs(fw.universe().begin(), fw.universe().end());
                return rote_learn(fw, GroundAtom{"t", {cs[pick(cs.size())]}});
            }
            case 1: {
                if (rules.empty()) return std::nullopt;
                const Rule& r = rules[pick(rules.size())];
                if (r.equalities.empty()) return std::nullopt;
                return equality_removal(fw, r.id, r.equalities[pick(r.equalities.size())]);
            }
            case 2: {
                if (rules.size() < 2) return std::nullopt;
                const Rule& t = rules[pick(rules.size())];
                const Rule& f = rules[pick(rules.size())];
                if (t.id == f.id) return std::nullopt;
                const auto parts = fold_partitions(t, f);
                if (parts.empty()) return std::nullopt;
                return fold(fw, t.id, f.id, parts[pick(parts.size())]);
            }
            default: {
                if (rules.empty()) return std::nullopt;
                const Rule& r = rules[pick(rules.size())];
                std::vector<std::string> scope;
                for (const auto& v : rule_variables(r))
                    if (coin()) scope.push_back(v);
                return assumption_introduction(fw, r.id, scope);
            }
        }
    }

private:
    Term term() { return coin(0.4) ? Term::constant(constants_[pick(constants_.size())]) : variable(); }
    Term variable() { return Term::variable(std::string(1, "XYZ"[pick(3)])); }

    Atom atom(const Signature& s) {
        Atom a{s.name, {}};
        for (std::size_t i = 0; i < s.arity; ++i) a.args.push_back(term());
        return a;
    }

    static Atom schema(const Signature& s) {
        Atom a{s.name, {}};
        for (std::size_t i = 0; i < s.arity; ++i) a.args.push_back(Term::variable("X" + std::to_string(i)));
        return a;
    }

    std::mt19937 rng_;
    std::vector<std::string> constants_;
};

inline Result monotonicity(std::uint32_t seed, std::size_t cases) {
    Generator g(seed);
    Result r;
    for (; r.cases < cases; ++r.cases) {
        const Framework fw = g.framework();
        const GroundFramework gf = ground(fw);
        const AtomSet small = g.subset(gf.assumptions);
        AtomSet big = small;
        for (const auto& a : g.subset(gf.assumptions)) big.insert(a);
        const AtomSet cs = consequences(gf, small), cb = consequences(gf, big);
        if (!std::includes(cb.begin(), cb.end(), cs.begin(), cs.end()) ||
            cs != oracle::closure(oracle::ground(fw), small))
            r.fail(serialize(fw));
    }
    return r;
}

inline Result stable_recheck(std::uint32_t seed, std::size_t cases) {
    Generator g(seed);
    Result r;
    for (; r.cases < cases; ++r.cases) {
        const Framework fw = g.framework();
        const auto exts = stable_extensions(fw);
        const auto og = oracle::ground(fw);
        bool ok = true;
        for (const auto& e : exts)
            ok = ok && oracle::is_stable(og, e.assumptions) && e.claims == oracle::closure(og, e.assumptions);
        const auto want = oracle::stable(fw);
        ok = ok && exts.size() == want.size();
        for (std::size_t k = 0; ok && k < exts.size(); ++k) ok = exts[k].assumptions == want[k].assumptions;
        if (!ok) r.fail(serialize(fw));
    }
    return r;
}

inline Result round_trip(std::uint32_t seed, std::size_t cases) {
    Generator g(seed);
    Result r;
    for (; r.cases < cases; ++r.cases) {
        const Framework fw = g.framework();
        const std::string text = serialize(fw);
        try {
            const Framework back = parse_framework(text);
            if (!back.structurally_equal(fw) || serialize(back) != text) r.fail(text);
        } catch (const Error& e) {
            r.fail(text + "\n" + e.what());
        }
    }
    return r;
}

inline Result replay_equality(std::uint32_t seed, std::size_t cases, std::size_t* events = nullptr) {
    Generator g(seed);
    Result r;
    for (; r.cases < cases; ++r.cases) {
        const Framework start = g.framework();
        Framework fw = start;
        Trace trace;
        for (int i = 0; i < 6; ++i) {
            auto t = g.step(fw);
            if (!t) continue;
            fw = std::move(t->framework);
            trace.events.push_back(std::move(t->event));
        }
        if (events) *events += trace.events.size();
        const std::string json = trace_to_json(trace);
        try {
            if (serialize(replay(start, trace_from_json(json))) != serialize(fw)) r.fail(serialize(start) + json);
        } catch (const Error& e) {
            r.fail(serialize(start) + json + e.what());
        }
    }
    return r;
}

}  // namespace props
