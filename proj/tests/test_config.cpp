#include "doctest.h"

#include "bergspec/error.hpp"
#include "bergspec/scenario.hpp"

using namespace bergspec;

namespace {

ConfigError config_error(char const* text) {
    try {
        parse_scenario(text);
    } catch (ConfigError const& e) {
        return e;
    }
    FAIL("expected a config error for: " << text);
    return ConfigError("unreachable");
}

}  // namespace

TEST_CASE("built-in scenarios") {
    Scenario s = parse_scenario("p = 2\nmodel = strip_flow\na = 1\n");
    CHECK(s.kind() == ModelKind::strip_flow);
    CHECK(s.p() == 2.0);
    CHECK(s.a() == 1.0);
    CHECK(s.weights() == WeightParams{});

    Scenario t = parse_scenario("p = 2\nmodel = trident\nc = 0, s = 0, d = 0.5\n");
    CHECK(t.kind() == ModelKind::trident);
    CHECK(t.weights() == WeightParams{0.0, 0.0, 0.5});

    Scenario h = parse_scenario("# comment\np = 3   # trailing\nmodel = half_strip\n");
    CHECK(h.kind() == ModelKind::half_strip);
    CHECK(h.p() == 3.0);
}

TEST_CASE("parametric scenario") {
    Scenario s = parse_scenario("p = 1\nmodel = parametric\nfp = (1, 0.5, 0.0, dw); fp = (\xE2\x88\x92" "1, \xE2\x88\x92" "0.5, 0.0, rep)\n");
    REQUIRE(s.fixed_points().size() == 2);
    CHECK(s.fixed_points()[0].role == Role::denjoy_wolff);
    CHECK(s.fixed_points()[1].zeta == cplx(-1.0));
    CHECK(s.fixed_points()[1].alpha == -0.5);
    CHECK_FALSE(s.evaluable());

    Scenario n = parse_scenario("p = 2\nmodel = parametric\nfp = (1, 1, -inf, dw)\n");
    CHECK(n.fixed_points()[0].beta.neg_inf);
}

TEST_CASE("expression scenario") {
    Scenario s = parse_scenario(
        "p = 2\nmodel = expression\nh_expr = log((1+z)/(1-z))\n"
        "fp = (1, 1, 0, dw)\nfp = (-1, -1, 0, rep)\npetal_anchor = -0.9\n");
    CHECK(s.kind() == ModelKind::expression);
    CHECK(std::abs(s.h(0.5) - std::log(3.0)) < 1e-14);
    CHECK(s.has_petal_anchor(1));
}

TEST_CASE("config errors") {
    CHECK(config_error("p = 0.5\nmodel = strip_flow\n").line() == 1);
    CHECK(config_error("p = 2\nmodel = circle\n").line() == 2);
    CHECK(config_error("p = 2\np = 3\nmodel = trident\n").line() == 2);
    CHECK(config_error("p = 2\nmodel = trident\ncolour = 1\n").line() == 3);
    config_error("model = trident\n");
    config_error("p = 2\nmodel = parametric\nfp = (1, 1, 0, dw)\nfp = (-1, 1, 0, dw)\n");
    config_error("p = 2\nmodel = parametric\nfp = (1, 1, 0, sideways)\n");
    config_error("p = 2\nmodel = parametric\nfp = (1, -1, 0, dw)\n");
    config_error("p = 2\nmodel = trident\nfp = (1, 1, 0, dw)\n");
    config_error("p = 2\nmodel = parametric\nc = 1\nfp = (1, 1, 0, dw)\n");
    config_error("p = 2\nmodel = strip_flow\na = x\n");
    config_error("p = 2\nmodel = expression\nh_expr = log((1+z)/(1-z)\nfp = (1, 1, 0, dw)\n");

    ConfigError e = config_error("p = 2\nmodel = strip_flow\na = 1, c = oops\n");
    CHECK(e.line() == 3);
    CHECK(e.column() == 12);
}
