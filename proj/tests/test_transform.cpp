#include <catch_amalgamated.hpp>

#include "aba/transform.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace aba;
using support::atom;
using support::rule;

namespace {

RuleId id_of(const Framework& fw, const std::string& text) {
    const Rule r = rule(text);
    for (const auto& x : fw.rules())
        if (x.same_shape(r)) return x.id;
    FAIL("no rule " << text);
    return {};
}

bool has_rule(const Framework& fw, const std::string& text) {
    const Rule r = rule(text);
    return std::any_of(fw.rules().begin(), fw.rules().end(), [&](const Rule& x) { return x.same_shape(r); });
}

Framework with(const Framework& fw, std::initializer_list<const char*> rules,
               std::initializer_list<const char*> decls = {}) {
    FrameworkBuilder b(fw);
    for (const char* d : decls) b.add_assumption(parse_assumption(d));
    for (const char* r : rules) b.add_rule(rule(r));
    return std::move(b).build();
}

Transformed fold_with(const Framework& fw, const std::string& target, const std::string& folder) {
    const RuleId t = id_of(fw, target), f = id_of(fw, folder);
    const auto parts = fold_partitions(*fw.find_rule(t), *fw.find_rule(f));
    REQUIRE_FALSE(parts.empty());
    return fold(fw, t, f, parts.front());
}

// Unfolding the new K atom must give back the target's ground instances.
void check_round_trip(const Framework& fw, const Transformed& t, const std::string& folder) {
    const Rule& before = t.event.removed.front();
    const Rule& after = t.event.added.front();
    const Rule& f = *fw.find_rule(id_of(fw, folder));
    std::size_t k = 0;
    while (after.body[k].predicate != f.head.predicate) ++k;
    CHECK(oracle::instance_set(oracle::unfold(after, k, f), fw.universe()) ==
          oracle::instance_set(before, fw.universe()));
}

}  // namespace

TEST_CASE("rote learning adds one guarded rule") {
    const Framework fw = support::framework("fig1.aba");
    const Transformed t = rote_learn(fw, atom("flies(a)"));
    CHECK(t.framework.rules().size() == fw.rules().size() + 1);
    CHECK(has_rule(t.framework, "flies(X) <- X = a."));
    CHECK(t.event.rule == RuleName::RoteLearning);
    CHECK(t.event.target_predicate == "flies");
    CHECK(t.event.removed.empty());
    REQUIRE(t.event.added.size() == 1);
}

TEST_CASE("rote learning a binary contrary") {
    const Framework fw = support::framework("robot.aba");
    const Transformed t = rote_learn(fw, atom("c_alpha(4,6)"));
    CHECK(to_string(t.event.added.front()) == "c_alpha(V0,V1) <- V0 = 4, V1 = 6.");
}

TEST_CASE("rote learning a proposition") {
    const Transformed t = rote_learn(Framework{}, atom("p"));
    const Rule& r = t.event.added.front();
    CHECK(r.equalities.empty());
    CHECK(r.body.empty());
    CHECK(to_string(r) == "p.");
}

TEST_CASE("rote learning rejects assumptions") {
    const Framework fw = support::framework("ex1.aba");
    CHECK_THROWS_AS(rote_learn(fw, atom("a(1)")), TransformError);
}

TEST_CASE("equality removal drops a binding") {
    const Framework fw = with(support::framework("robot.aba"), {"free(X) <- Y = 2, step(X, Y)."});
    const Transformed t = equality_removal(fw, id_of(fw, "free(X) <- Y = 2, step(X, Y)."),
                                           Equality{Term::variable("V1"), Term::constant("2")});
    CHECK(has_rule(t.framework, "free(X) <- step(X, Y)."));
    CHECK_FALSE(has_rule(t.framework, "free(X) <- Y = 2, step(X, Y)."));
    CHECK(t.event.added.front().id != t.event.removed.front().id);
}

TEST_CASE("equality removal needs the equality") {
    const Framework fw = with(support::framework("fig1.aba"), {"flies(X) <- bird(X)."});
    CHECK_THROWS_AS(equality_removal(fw, id_of(fw, "flies(X) <- bird(X)."),
                                     Equality{Term::variable("V0"), Term::constant("a")}),
                    TransformError);
}

TEST_CASE("equality removal generalises to the whole universe") {
    const Framework fw = with(support::framework("fig1.aba"), {"flies(X) <- X = a."});
    const Transformed t = equality_removal(fw, id_of(fw, "flies(X) <- X = a."),
                                           Equality{Term::variable("V0"), Term::constant("a")});
    const Rule& r = t.event.added.front();
    CHECK(to_string(r) == "flies(V0).");
    std::set<GroundAtom> heads;
    for (const auto& [h, b] : oracle::instance_set(r, fw.universe())) heads.insert(h);
    CHECK(heads.size() == fw.universe().size());
    CHECK(oracle::instance_set(t.event.removed.front(), fw.universe()).size() == 1);
}

TEST_CASE("folding with a background fact") {
    const Framework fw = with(support::framework("fig1.aba"), {"flies(X) <- X = a."});
    const Transformed t = fold_with(fw, "flies(X) <- X = a.", "bird(X) <- X = a.");
    CHECK(to_string(t.event.added.front()) == "flies(V0) <- bird(V0).");
    CHECK(t.event.rule == RuleName::Folding);
    check_round_trip(fw, t, "bird(X) <- X = a.");
}

TEST_CASE("folding introduces the folder's extra equalities") {
    const Framework fw = with(support::framework("robot.aba"), {"free(X) <- X = 1."});
    const Transformed t = fold_with(fw, "free(X) <- X = 1.", "step(X, Y) <- X = 1, Y = 2.");
    CHECK(t.event.added.front().same_shape(rule("free(X) <- Y = 2, step(X, Y).")));
    check_round_trip(fw, t, "step(X, Y) <- X = 1, Y = 2.");
}

TEST_CASE("folding with a learnt rule replaces a body") {
    const Framework fw = with(support::framework("nixon.aba"),
                              {"pacifist(X) <- quacker(X), normal_quacker(X).",
                               "abnormal_republican(X) <- quacker(X), normal_quacker(X)."},
                              {"assumption normal_quacker(X) contrary abnormal_quacker(X)."});
    const Transformed t = fold_with(fw, "abnormal_republican(X) <- quacker(X), normal_quacker(X).",
                                    "pacifist(X) <- quacker(X), normal_quacker(X).");
    CHECK(t.event.added.front().same_shape(rule("abnormal_republican(X) <- pacifist(X).")));
    check_round_trip(fw, t, "pacifist(X) <- quacker(X), normal_quacker(X).");
}

TEST_CASE("folding enforces the side condition") {
    // The folder's X = 1 would land on the head variable.
    CHECK(fold_partitions(rule("p(X) <- s(X)."), rule("q(X) <- X = 1, s(X).")).empty());
    CHECK(fold_partitions(rule("p(X) <- X = 1, s(X)."), rule("q(X) <- X = 1, s(X).")).size() == 1);
    const Framework fw = with(Framework{}, {"p(X) <- X = 1.", "q(X) <- X = 2."});
    const RuleId p = id_of(fw, "p(X) <- X = 1."), q = id_of(fw, "q(X) <- X = 2.");
    CHECK_THROWS_AS(fold(fw, p, p, FoldPartition{}), TransformError);
    CHECK_THROWS_AS(fold(fw, p, q, FoldPartition{{0}, {}}), TransformError);
}

TEST_CASE("theta subsumption") {
    CHECK(theta_subsumes(rule("p(X) <- q(X)."), rule("p(X) <- q(X), r(X).")));
    CHECK(theta_subsumes(rule("p(X) <- q(X)."), rule("p(X) <- X = a, q(X).")));
    CHECK_FALSE(theta_subsumes(rule("p(X) <- q(X), r(X)."), rule("p(X) <- q(X).")));
    CHECK_FALSE(theta_subsumes(rule("p(X) <- X = a."), rule("p(X) <- X = b.")));
    CHECK(theta_subsumes(rule("p(X) <- X = Y, q(Y)."), rule("p(X) <- q(X).")));
}

TEST_CASE("a general rule subsumes a rote rule") {
    const Framework fw = with(support::framework("fig1.aba"), {"flies(X) <- bird(X).", "flies(X) <- X = b."});
    CHECK(subsumes(fw, id_of(fw, "flies(X) <- bird(X)."), id_of(fw, "flies(X) <- X = b.")));
    CHECK_FALSE(subsumes(fw, id_of(fw, "flies(X) <- X = b."), id_of(fw, "flies(X) <- bird(X).")));
}

TEST_CASE("a rule subsumes a copy of itself") {
    FrameworkBuilder b(support::framework("fig1.aba"));
    const RuleId a = b.add_rule(rule("flies(X) <- bird(X)."));
    const RuleId c = b.add_rule(rule("flies(X) <- bird(X)."));
    const Framework fw = std::move(b).build();
    CHECK(subsumes(fw, a, c));
    CHECK(subsumes(fw, c, a));
}

TEST_CASE("subsumption needs arguments for the keeper's body") {
    const Framework fw = with(Framework{}, {"r(1).", "p(X) <- q(X).", "p(X) <- r(X)."});
    CHECK_FALSE(subsumes(fw, id_of(fw, "p(X) <- q(X)."), id_of(fw, "p(X) <- r(X).")));
    // Brute force: the victim has an argument for p(1), the keeper has none.
    const auto g = oracle::ground(fw);
    CHECK(oracle::closure(g, {}).count(atom("r(1)")));
    CHECK_FALSE(oracle::closure(g, {}).count(atom("q(1)")));
}

TEST_CASE("subsumption compares supports") {
    const Framework fw = with(Framework{}, {"p(X) <- q(X), a(X).", "p(X) <- q(X).", "q(1)."},
                              {"assumption a(X) contrary c(X)."});
    CHECK(subsumes(fw, id_of(fw, "p(X) <- q(X)."), id_of(fw, "p(X) <- q(X), a(X).")));
    CHECK_FALSE(subsumes(fw, id_of(fw, "p(X) <- q(X), a(X)."), id_of(fw, "p(X) <- q(X).")));
}

TEST_CASE("removing subsumed rote rules") {
    Framework fw = support::framework("fig1.aba");
    for (const char* e : {"flies(a)", "flies(b)", "flies(e)", "flies(f)"}) fw = rote_learn(fw, atom(e)).framework;
    fw = fold_with(fw, "flies(X) <- X = a.", "bird(X) <- X = a.").framework;
    const RuleId keeper = id_of(fw, "flies(X) <- bird(X).");
    for (const char* v : {"flies(X) <- X = b.", "flies(X) <- X = e.", "flies(X) <- X = f."}) {
        const Transformed t = remove_subsumed(fw, keeper, id_of(fw, v));
        CHECK(t.event.rule == RuleName::Subsumption);
        CHECK(t.event.added.empty());
        fw = t.framework;
    }
    CHECK(fw.rules_for("flies").size() == 1);
    CHECK(fw.structurally_equal(with(support::framework("fig1.aba"), {"flies(X) <- bird(X)."})));
}

TEST_CASE("removing requires a present, subsumed victim") {
    const Framework fw = with(support::framework("fig1.aba"), {"flies(X) <- bird(X).", "flies(X) <- X = b."});
    const RuleId keeper = id_of(fw, "flies(X) <- bird(X).");
    CHECK_THROWS_AS(remove_subsumed(fw, keeper, RuleId{999}), TransformError);
    CHECK_THROWS_AS(remove_subsumed(fw, id_of(fw, "flies(X) <- X = b."), keeper), TransformError);
}

TEST_CASE("introducing a fresh assumption") {
    const Framework fw = with(support::framework("fig1.aba"), {"flies(X) <- bird(X)."});
    const Transformed t = assumption_introduction(fw, id_of(fw, "flies(X) <- bird(X)."), {"V0"});
    CHECK(to_string(t.event.added.front()) == "flies(V0) <- bird(V0), alpha_1(V0).");
    REQUIRE(t.event.new_assumption);
    CHECK(to_string(*t.event.new_assumption) == "assumption alpha_1(V0) contrary c_alpha_1(V0).");
    CHECK(t.framework.is_assumption_predicate("alpha_1"));
    CHECK(fresh_assumption_name(t.framework) == "alpha_2");
}

TEST_CASE("introducing an assumption over two variables") {
    const Framework fw = with(support::framework("robot.aba"), {"free(X) <- step(X, Y)."});
    const Transformed t = assumption_introduction(fw, id_of(fw, "free(X) <- step(X, Y)."), {"V0", "V1"});
    CHECK(t.event.added.front().same_shape(rule("free(X) <- step(X, Y), alpha_1(X, Y).")));
    CHECK(to_string(t.framework.find_assumption("alpha_1")->contrary) == "c_alpha_1(V0,V1)");
}

TEST_CASE("reusing a declared assumption") {
    const Framework fw = with(support::framework("nixon.aba"),
                              {"pacifist(X) <- quacker(X), normal_quacker(X).", "abnormal_republican(X) <- quacker(X)."},
                              {"assumption normal_quacker(X) contrary abnormal_quacker(X)."});
    const Transformed t = assumption_introduction(fw, id_of(fw, "abnormal_republican(X) <- quacker(X)."), {"V0"},
                                                  std::string("normal_quacker"));
    CHECK(has_rule(t.framework, "abnormal_republican(X) <- quacker(X), normal_quacker(X)."));
    CHECK_FALSE(t.event.new_assumption);
    CHECK(t.framework.assumptions() == fw.assumptions());
}

TEST_CASE("introduction checks scope and arity") {
    const Framework fw = with(support::framework("robot.aba"), {"free(X) <- step(X, Y)."},
                              {"assumption a(X) contrary c(X)."});
    const RuleId r = id_of(fw, "free(X) <- step(X, Y).");
    CHECK_THROWS_AS(assumption_introduction(fw, r, {"V7"}), TransformError);
    CHECK_THROWS_AS(assumption_introduction(fw, r, {"V0", "V1"}, std::string("a")), TransformError);
    CHECK_THROWS_AS(assumption_introduction(fw, r, {"V0"}, std::string("missing")), TransformError);
}

TEST_CASE("events replay onto the original framework") {
    const Framework start = with(support::framework("fig1.aba"), {"flies(X) <- X = a."});
    const Transformed a = fold_with(start, "flies(X) <- X = a.", "bird(X) <- X = a.");
    const Transformed b = assumption_introduction(a.framework, a.event.added.front().id, {"V0"});
    Trace trace{{}, {a.event, b.event}};
    CHECK(replay(start, trace).structurally_equal(b.framework));
    CHECK(apply_event(a.framework, b.event).structurally_equal(b.framework));
    CHECK_THROWS_AS(apply_event(start, b.event), TransformError);
}

TEST_CASE("rule names round trip") {
    for (RuleName r : {RuleName::RoteLearning, RuleName::EqualityRemoval, RuleName::Folding, RuleName::Subsumption,
                       RuleName::AssumptionIntroduction})
        CHECK(rule_name_from_string(to_string(r)) == r);
    CHECK_FALSE(rule_name_from_string("Unfolding"));
}
