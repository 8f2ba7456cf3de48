#include <catch_amalgamated.hpp>

#include "properties.hpp"

namespace {

constexpr std::size_t kCases = 250;

void require_clean(const props::Result& r) {
    INFO(r.first_failure);
    CHECK(r.cases >= 200);
    CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("consequences are monotone in the assumptions") { require_clean(props::monotonicity(11, kCases)); }

TEST_CASE("stable extensions pass the definitional check") { require_clean(props::stable_recheck(23, kCases)); }

TEST_CASE("parse after serialize is the identity") { require_clean(props::round_trip(37, kCases)); }

TEST_CASE("trace replay reproduces the transformed framework") {
    std::size_t events = 0;
    require_clean(props::replay_equality(41, kCases, &events));
    CHECK(events > kCases);
}

TEST_CASE("generated frameworks are valid and varied") {
    props::Generator g(5);
    std::size_t with_assumptions = 0, with_extensions = 0, without = 0;
    for (int i = 0; i < 200; ++i) {
        const aba::Framework fw = g.framework();
        const auto violations = aba::validate(fw);
        INFO(aba::serialize(fw) << (violations.empty() ? "" : violations.front().message));
        CHECK(violations.empty());
        with_assumptions += !fw.assumptions().empty();
        const auto n = aba::stable_extensions(fw).size();
        with_extensions += n > 1;
        without += n == 0;
    }
    CHECK(with_assumptions > 50);
    CHECK(with_extensions > 0);
    CHECK(without > 0);
}
