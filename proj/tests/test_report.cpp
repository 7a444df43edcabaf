#include "doctest.h"

#include <cmath>
#include <regex>

#include "bergspec/report.hpp"
#include "bergspec/svg.hpp"

using namespace bergspec;

namespace {

int count(std::string const& text, std::string const& needle) {
    int n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(round12(std::exp(1.0)) == 2.71828182846);
    CHECK(std::signbit(round12(-0.0)) == false);
    CHECK(number(ExtReal::neg_inf()) == Json("-inf"));
    CHECK(number(neg_infinity) == Json("-inf"));
    CHECK(dump(number(1.0 / 3.0)) == "0.333333333333\n");
    CHECK(complex_json(cplx(1.5, -2.0)) == Json::array({1.5, -2.0}));
}

TEST_CASE("region serialization") {
    Json strip = to_json(vstrip(-1.0, 1.0));
    CHECK(strip["kind"] == "VStrip");
    CHECK(strip["params"] == Json::array({-1.0, 1.0}));
    CHECK(strip["certainty"] == "certified");
    CHECK(to_json(half_plane_left(-0.3))["params"] == Json::array({-0.3}));
    Json open = to_json(open_vstrip_interior(ExtReal::neg_inf(), 1.0));
    CHECK(open["params"][0] == "-inf");
    CHECK(to_json(open_annulus_interior(0.0, 1.0, Certainty::unknown_question2))["certainty"] == "unknown_question2");
    CHECK(to_json(SpectralRegion::empty()) == Json::array());

    Json g = to_json(GammaProfile(2.0, 1.0, {-1.0}));
    CHECK(g["gamma0"] == 1.0);
    CHECK(g["gamma1"] == -1.0);
    CHECK(g["gamma2"] == "-inf");
}

TEST_CASE("classify reports") {
    RunStatus status;
    Json r = classify_report(Scenario::strip_flow(1.0), {1.0}, status);
    CHECK(exit_code(status) == 0);
    CHECK(r["case"] == "i");
    CHECK(r["regions"]["generator_spectrum"] == to_json(SpectralRegion({vstrip(-1.0, 1.0)})));
    CHECK(r["regions"]["essential_spectrum"].size() == 2);
    Json op = r["operator"][0];
    CHECK(op["t"] == 1.0);
    CHECK(op["radius"]["value"] == round12(std::exp(1.0)));
    CHECK(op["point_spectrum"][0]["kind"] == "OpenAnnulusInterior");

    RunStatus s2;
    Scenario case2 = Scenario::parametric(2.0, {{1.0, 0.5, Beta{0.0}, Role::denjoy_wolff},
                                                {-1.0, -0.5, Beta{1.5}, Role::repelling},
                                                {cplx(0, 1), -0.3, Beta{0.0}, Role::repelling}});
    Json r2 = classify_report(case2, {1.0}, s2);
    CHECK(r2["case"] == "ii");
    CHECK(r2["regions"]["generator_spectrum"] == to_json(SpectralRegion({half_plane_left(-0.3), vstrip(0.5, 1.0)})));

    // gamma_1 = -inf leaves the essential spectrum uncovered.
    RunStatus s3;
    Json r3 = classify_report(Scenario::parametric(2.0, {{1.0, 1.0, {}, Role::denjoy_wolff}}), {1.0}, s3);
    CHECK(s3.coverage_error);
    CHECK(exit_code(s3) == 3);
    CHECK(r3["regions"]["essential_spectrum"].contains("coverage_error"));
}

TEST_CASE("JSON round trip and determinism") {
    RunStatus status;
    Scenario s = Scenario::trident(2.0, {0.0, 0.0, 0.5});
    Json a = classify_report(s, {0.5, 1.0}, status);
    std::string text = dump(a);
    CHECK(Json::parse(text) == a);
    CHECK(dump(Json::parse(text)) == text);
    CHECK(dump(classify_report(s, {0.5, 1.0}, status)) == text);

    Json v = verify_report(Scenario::strip_flow(1.0), {cplx(0.5), cplx(2.0)}, {1.0}, Tolerances{}, status);
    std::string vt = dump(v);
    CHECK(Json::parse(vt) == v);
    CHECK(dump(verify_report(Scenario::strip_flow(1.0), {cplx(0.5), cplx(2.0)}, {1.0}, Tolerances{}, status)) == vt);
}

TEST_CASE("verification checks carry tolerance and status") {
    RunStatus status;
    Json v = verify_report(Scenario::strip_flow(1.0), {cplx(0.5)}, {1.0}, Tolerances{}, status);
    CHECK_FALSE(status.verification_failed);
    int checks = 0;
    std::function<void(Json const&)> walk = [&](Json const& j) {
        if (j.is_object()) {
            if (j.contains("check")) {
                ++checks;
                CHECK(j.contains("tolerance"));
                CHECK(j.contains("status"));
                std::string st = j["status"];
                CHECK((st == "pass" || st == "fail" || st == "inconclusive"));
            }
            for (auto const& item : j.items()) walk(item.value());
        } else if (j.is_array()) {
            for (auto const& item : j) walk(item);
        }
    };
    walk(v);
    CHECK(checks >= 5);
    CHECK(v["summary"]["fail"] == 0);

    // An absurdly tight identity tolerance is reported as a failure.
    Tolerances strict;
    strict.identity = 0.0;
    strict.eigen_residual = 0.0;
    RunStatus failing;
    verify_report(Scenario::strip_flow(1.0), {cplx(0.5)}, {1.0}, strict, failing);
    CHECK(failing.verification_failed);
    CHECK(exit_code(failing) == 1);
}

TEST_CASE("complex parsing") {
    CHECK(parse_complex("0.5") == cplx(0.5, 0.0));
    CHECK(parse_complex("-1.5+2i") == cplx(-1.5, 2.0));
    CHECK(parse_complex("0.5+0i") == cplx(0.5, 0.0));
    CHECK(parse_complex("3i") == cplx(0.0, 3.0));
    CHECK_THROWS(parse_complex("z"));
    CHECK_THROWS(parse_complex("1+"));
}

TEST_CASE("SVG rendering contracts") {
    Viewport view;
    std::string empty = render_svg(SpectralRegion::empty(), view);
    CHECK(empty.rfind("<?xml", 0) == 0);
    CHECK(count(empty, "<svg") == 1);
    CHECK(empty.find("version=\"1.1\"") != std::string::npos);
    CHECK(empty.find("width=\"800\"") != std::string::npos);
    CHECK(count(empty, "class=\"VStrip") == 0);
    CHECK(count(empty, "<path") == 0);

    SpectralRegion strip({vstrip(-1.0, 1.0)});
    Viewport gv = generator_viewport(strip);
    CHECK(gv.re_min < -1.0);
    CHECK(gv.re_max > 1.0);
    std::string s = render_svg(strip, gv);
    CHECK(count(s, "class=\"VStrip certified\"") == 1);
    CHECK(s.find("fill-opacity=\"0.8\"") != std::string::npos);
    CHECK(render_svg(strip, gv) == s);

    double e = std::exp(1.0);
    SpectralRegion op({closed_annulus(1.0 / e, e), open_annulus_interior(0.0, 1.0 / e, Certainty::unknown_question2)});
    std::string o = render_svg(op, operator_viewport(op));
    CHECK(count(o, "<path") == 2);
    CHECK(count(o, "fill-rule=\"evenodd\"") == 2);
    CHECK(o.find("ClosedAnnulus certified") != std::string::npos);
    CHECK(o.find("OpenAnnulusInterior unknown_question2") != std::string::npos);
    CHECK(o.find("url(#hatch)") != std::string::npos);

    std::string lines = render_svg(SpectralRegion({vline(1.0, Certainty::boundary_unresolved)}), view, "a < b & c");
    CHECK(lines.find("stroke-opacity=\"0.4\"") != std::string::npos);
    CHECK(lines.find("a &lt; b &amp; c") != std::string::npos);
}
