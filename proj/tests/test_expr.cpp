#include "doctest.h"

#include "bergspec/error.hpp"
#include "bergspec/expr.hpp"

using namespace bergspec;

namespace {

// Richardson-refined central difference.
template <class F>
cplx central_difference(F&& f, cplx z, double h = 1e-3) {
    auto d = [&](double s) { return (f(z + s) - f(z - s)) / (2.0 * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace

TEST_CASE("arithmetic and constants") {
    cplx z(0.5, 0.2);
    AnalyticExpr e = AnalyticExpr::parse("z^2 + 3*z - 1");
    CHECK(std::abs(e(z) - (z * z + 3.0 * z - 1.0)) < 1e-15);
    CHECK(std::abs(AnalyticExpr::parse("-1.5+2i")(0.0) - cplx(-1.5, 2.0)) == 0.0);
    CHECK(std::abs(AnalyticExpr::parse("i*i")(0.0) + 1.0) == 0.0);
    CHECK(AnalyticExpr::parse("2*pi - pi").is_constant());
    CHECK(std::abs(AnalyticExpr::parse("2*pi - pi")(0.3) - pi) < 1e-15);
    CHECK_FALSE(AnalyticExpr::parse("z - z + 1").is_constant());
    CHECK(std::abs(AnalyticExpr::parse("z^-2")(z) - 1.0 / (z * z)) < 1e-14);
}

TEST_CASE("jets match finite differences") {
    char const* sources[] = {
        "exp(z)*log(1+z)/sqrt(2-z)",
        "pow(1+z, 0.4)*(z-i)^3",
        "0.5*log((z-i)*(z+i)) - log(1+z)",
        "pow((1+z)/(1-z), 0.4) * pow((1-z)*(1+z)/2, 0.7)",
    };
    cplx points[] = {{0.1, 0.2}, {-0.4, 0.3}, {0.6, -0.5}};
    for (char const* src : sources) {
        AnalyticExpr e = AnalyticExpr::parse(src);
        for (cplx z : points) {
            CAPTURE(src);
            Jet j = e.jet(z);
            CHECK(std::abs(j.value - e(z)) < 1e-14);
            cplx d1 = central_difference([&](cplx w) { return e(w); }, z);
            cplx d2 = central_difference([&](cplx w) { return e.jet(w).d1; }, z);
            CHECK(std::abs(j.d1 - d1) < 1e-9 * (1.0 + std::abs(d1)));
            CHECK(std::abs(j.d2 - d2) < 1e-8 * (1.0 + std::abs(d2)));
        }
    }
}

TEST_CASE("parse errors carry a column") {
    auto column_of = [](char const* text) {
        try {
            AnalyticExpr::parse(text);
        } catch (ConfigError const& e) {
            return e.column();
        }
        return -1;
    };
    CHECK(column_of("z +") == 4);
    CHECK(column_of("foo(z)") == 1);
    CHECK(column_of("(z") > 0);
    CHECK(column_of("z^0.5") > 0);
    CHECK(column_of("z $ 2") == 3);
    CHECK(column_of("") > 0);
}
