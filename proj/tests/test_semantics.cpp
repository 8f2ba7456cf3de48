#include <catch_amalgamated.hpp>

#include "aba/semantics.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace aba;
using support::atom;
using support::atoms;

namespace {

Argument argument(const GroundFramework& gf, const char* claim, AtomSet support) {
    for (auto& a : arguments_for(gf, atom(claim)))
        if (a.support == support) return a;
    FAIL("no argument for " << claim);
    return {};
}

bool has_predicate(const AtomSet& s, const std::string& p) {
    return std::any_of(s.begin(), s.end(), [&](const GroundAtom& a) { return a.predicate == p; });
}

const char* const kCorpus[] = {"ex1.aba", "ex4.aba", "fig1.aba", "fig2.aba", "robot.aba", "robot_learnt.aba",
                               "nixon.aba", "nixon_learnt.aba"};

}  // namespace

TEST_CASE("consequences without assumptions") {
    const GroundFramework gf = ground(support::framework("ex1.aba"));
    const AtomSet cn = consequences(gf, {});
    CHECK(cn.count(atom("r(1)")));
    CHECK_FALSE(has_predicate(cn, "p"));
    CHECK_FALSE(has_predicate(cn, "q"));
}

TEST_CASE("consequences of one assumption") {
    const GroundFramework gf = ground(support::framework("ex1.aba"));
    const AtomSet cn = consequences(gf, atoms({"a(1)"}));
    CHECK(cn.count(atom("p(1)")));
    CHECK_FALSE(cn.count(atom("p(2)")));
}

TEST_CASE("consequences follow chains of rules") {
    const Framework fw = support::framework("fig1.aba");
    const AtomSet cn = consequences(ground(fw), {});
    CHECK(cn.count(atom("bird(e)")));
    CHECK(cn == oracle::closure(oracle::ground(fw), {}));
}

TEST_CASE("consequences agree with the chaining oracle on every corpus file") {
    for (const char* name : kCorpus) {
        const Framework fw = support::framework(name);
        const GroundFramework gf = ground(fw);
        const auto og = oracle::ground(fw);
        CHECK(consequences(gf, {}) == oracle::closure(og, {}));
        const AtomSet all(gf.assumptions.begin(), gf.assumptions.end());
        CHECK(consequences(gf, all) == oracle::closure(og, all));
    }
}

TEST_CASE("arguments for a non-assumption claim") {
    const GroundFramework gf = ground(support::framework("ex1.aba"));
    const auto args = arguments_for(gf, atom("q(1)"));
    REQUIRE(args.size() == 1);
    CHECK(args[0].support == atoms({"b(1)"}));
    CHECK(args[0].top_rule.has_value());
    CHECK(args[0].rules.size() == 1);
}

TEST_CASE("an assumption is its own argument") {
    const GroundFramework gf = ground(support::framework("ex1.aba"));
    const auto args = arguments_for(gf, atom("a(1)"));
    REQUIRE(args.size() == 1);
    CHECK(args[0].support == atoms({"a(1)"}));
    CHECK(args[0].rules.empty());
    CHECK_FALSE(args[0].top_rule.has_value());
}

TEST_CASE("no arguments for unsupported examples") {
    const GroundFramework gf = ground(support::framework("fig1.aba"));
    CHECK(arguments_for(gf, atom("flies(a)")).empty());
}

TEST_CASE("argument supports are the oracle's minimal supports plus supersets") {
    for (const char* name : {"ex4.aba", "fig2.aba", "nixon_learnt.aba"}) {
        const Framework fw = support::framework(name);
        const GroundFramework gf = ground(fw);
        const auto og = oracle::ground(fw);
        const AtomSet all(gf.assumptions.begin(), gf.assumptions.end());
        const SupportIndex index(gf);
        for (const auto& a : oracle::closure(og, all)) {
            const auto want = oracle::minimal_supports(og, a);
            CHECK(index.supports(a) == want);
            std::set<AtomSet> seen;
            for (const auto& arg : arguments_for(gf, a)) {
                CHECK(oracle::closure(og, arg.support).count(a));
                seen.insert(arg.support);
            }
            for (const auto& m : want) CHECK(seen.count(m));
        }
    }
}

TEST_CASE("arguments respect the budget") {
    const GroundFramework gf = ground(support::framework("nixon_learnt.aba"));
    SemanticsConfig cfg;
    cfg.argument_budget = 1;
    CHECK_THROWS_AS(arguments_for(gf, atom("abnormal_republican(a)"), cfg), BudgetExceeded);
}

TEST_CASE("attacks between arguments") {
    const GroundFramework gf = ground(support::framework("ex1.aba"));
    const Argument r1 = argument(gf, "r(1)", {});
    const Argument q1 = argument(gf, "q(1)", atoms({"b(1)"}));
    const Argument p1 = argument(gf, "p(1)", atoms({"a(1)"}));
    CHECK(attacks(gf, r1, argument(gf, "b(1)", atoms({"b(1)"}))));
    CHECK(attacks(gf, r1, q1));
    CHECK(attacks(gf, q1, p1));
    CHECK_FALSE(attacks(gf, p1, q1));
    CHECK_FALSE(attacks(gf, q1, r1));
    CHECK_FALSE(attacks(gf, p1, r1));
}

TEST_CASE("the single stable extension of the two-schema framework") {
    const auto exts = stable_extensions(support::framework("ex1.aba"));
    REQUIRE(exts.size() == 1);
    CHECK(exts[0].claims == atoms({"r(1)", "p(1)", "a(1)", "q(2)", "b(2)"}));
    CHECK(exts[0].assumptions == atoms({"a(1)", "b(2)"}));
}

TEST_CASE("two stable extensions once r(2) depends on a(2)") {
    const auto exts = stable_extensions(support::framework("ex4.aba"));
    REQUIRE(exts.size() == 2);
    const std::set<AtomSet> claims{exts[0].claims, exts[1].claims};
    CHECK(claims.count(atoms({"r(1)", "a(1)", "p(1)", "a(2)", "p(2)", "r(2)"})));
    CHECK(claims.count(atoms({"r(1)", "p(1)", "a(1)", "q(2)", "b(2)"})));
}

TEST_CASE("four stable extensions for the learnt quaker framework") {
    CHECK(stable_extensions(support::framework("nixon_learnt.aba")).size() == 4);
}

TEST_CASE("stable extensions equal the definitional oracle") {
    for (const char* name : kCorpus) {
        const Framework fw = support::framework(name);
        const auto got = stable_extensions(fw);
        const auto want = oracle::stable(fw);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].assumptions == want[i].assumptions);
            CHECK(got[i].claims == want[i].claims);
        }
    }
}

TEST_CASE("no stable extension for an odd loop") {
    const Framework fw = parse_framework("assumption a contrary c. c <- a.");
    CHECK(stable_extensions(fw).empty());
    CHECK(oracle::stable(fw).empty());
    CHECK_FALSE(entails(fw, atom("c"), Mode::Sceptical));
    CHECK_FALSE(entails(fw, atom("c"), Mode::Credulous));
}

TEST_CASE("no assumptions gives one extension with every consequence") {
    const Framework fw = support::framework("fig1.aba");
    const auto exts = stable_extensions(fw);
    REQUIRE(exts.size() == 1);
    CHECK(exts[0].assumptions.empty());
    CHECK(exts[0].claims == consequences(ground(fw), {}));
}

TEST_CASE("guessing is bounded by the budget") {
    SemanticsConfig cfg;
    cfg.assumption_budget = 3;
    CHECK_THROWS_AS(stable_extensions(support::framework("nixon_learnt.aba"), cfg), BudgetExceeded);
    cfg.assumption_budget = 4;
    CHECK(stable_extensions(support::framework("nixon_learnt.aba"), cfg).size() == 4);
}

TEST_CASE("sceptical and credulous entailment") {
    const Framework fw = support::framework("ex4.aba");
    CHECK(entails(fw, atom("r(1)"), Mode::Sceptical));
    CHECK_FALSE(entails(fw, atom("r(2)"), Mode::Sceptical));
    CHECK(entails(fw, atom("r(2)"), Mode::Credulous));
    CHECK_FALSE(entails(fw, atom("p(7)"), Mode::Credulous));
}

TEST_CASE("coverage of the bird examples") {
    const Framework fig1 = support::framework("fig1.aba");
    const Framework fig2 = support::framework("fig2.aba");
    CHECK_FALSE(covers(fig1, atom("flies(a)"), Mode::Credulous));
    CHECK(covers(fig2, atom("flies(e)"), Mode::Credulous));
    CHECK(covers(fig2, atom("flies(a)"), Mode::Sceptical));
    CHECK_FALSE(covers(fig2, atom("flies(c)"), Mode::Credulous));
}

TEST_CASE("entailment agrees with the oracle") {
    for (const char* name : kCorpus) {
        const Framework fw = support::framework(name);
        const auto exts = stable_extensions(fw);
        const auto want = oracle::stable(fw);
        const auto og = oracle::ground(fw);
        for (const auto& a : oracle::closure(og, AtomSet(og.assumptions.begin(), og.assumptions.end())))
            for (Mode m : {Mode::Credulous, Mode::Sceptical}) CHECK(entails(exts, a, m) == oracle::entails(want, a, m));
    }
}

TEST_CASE("mode names") {
    CHECK(to_string(Mode::Credulous) == "credulous");
    CHECK(mode_from_string("sceptical") == Mode::Sceptical);
    CHECK(mode_from_string("skeptical") == Mode::Sceptical);
    CHECK_FALSE(mode_from_string("brave").has_value());
}
