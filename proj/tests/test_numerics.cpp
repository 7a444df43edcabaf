#include "doctest.h"

#include <cmath>

#include "bergspec/error.hpp"
#include "bergspec/grid.hpp"
#include "bergspec/numerics.hpp"

using namespace bergspec;

namespace {

cplx const I(0.0, 1.0);

ComplexFunction constant(cplx c) {
    return [c](cplx) { return c; };
}

ComplexFunction exp_mu_h(Scenario const& s, cplx mu) {
    return [s, mu](cplx z) { return std::exp(mu * s.h(z)); };
}

GammaProfile profile_of(Scenario const& s) { return gammas_from(s.fixed_points(), s.p()); }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (Error const& e) {
        return e.kind();
    }
    return ErrorKind::config;
}

}  // namespace

TEST_CASE("exponent fit and verdict bands") {
    std::vector<double> inc;
    std::vector<int> ks{3, 4, 5, 6, 7, 8};
    for (int k : ks) inc.push_back(5.0 * std::exp2(-0.75 * k));
    CHECK(fit_decay_exponent(inc, ks) == doctest::Approx(0.75));
    CHECK(classify_exponent(0.2) == Verdict::convergent);
    CHECK(classify_exponent(-0.2) == Verdict::divergent);
    CHECK(classify_exponent(0.05) == Verdict::inconclusive);
    CHECK(classify_exponent(-0.1) == Verdict::inconclusive);
}

TEST_CASE("global ring quadrature") {
    Scenario strip = Scenario::strip_flow(1.0);
    MembershipVerdict one = ap_norm_rings(strip, constant(1.0), 2.0);
    CHECK(one.status == Verdict::convergent);
    CHECK(one.fitted_exponent == doctest::Approx(1.0).epsilon(0.02));
    CHECK(one.limit == doctest::Approx(pi).epsilon(1e-7));
    CHECK(one.ring_integrals.size() == 14);

    CHECK(ap_norm_rings(strip, exp_mu_h(strip, 1.5), 2.0).status == Verdict::divergent);
    CHECK(ap_norm_rings(strip, exp_mu_h(strip, 0.5), 2.0).status == Verdict::convergent);
    CHECK(ap_norm_rings(strip, exp_mu_h(strip, 1.0), 2.0).status != Verdict::convergent);

    // Monomials: the integral of |z^k|^2 over |z| < r is pi r^{2k+2} / (k+1).
    for (int k : {0, 1, 3, 8}) {
        MembershipVerdict m = ap_norm_rings(strip, [k](cplx z) { return std::pow(z, k); }, 2.0);
        double r = 1.0 - std::ldexp(1.0, -14);
        double exact = pi * std::pow(r, 2 * k + 2) / (k + 1);
        CHECK(m.ring_integrals.back() == doctest::Approx(exact).epsilon(1e-12));
        CHECK(m.limit == doctest::Approx(pi / (k + 1)).epsilon(1e-4));
    }
}

TEST_CASE("quadrature self-consistency under node doubling") {
    Scenario strip = Scenario::strip_flow(1.0);
    Scenario tri = Scenario::trident(2.0, {0.0, 0.0, 0.5});
    QuadratureGrid fine;
    fine.radial_nodes *= 2;
    fine.angular_nodes *= 2;
    struct Case {
        Scenario s;
        ComplexFunction f;
    };
    for (Case const& c : {Case{strip, exp_mu_h(strip, 0.5)}, Case{tri, eigenfunction(tri, cplx(-1.5))},
                          Case{tri, eigenfunction(tri, cplx(0.5))}}) {
        MembershipVerdict a = ap_norm_rings(c.s, c.f, 2.0);
        MembershipVerdict b = ap_norm_rings(c.s, c.f, 2.0, fine);
        REQUIRE(a.ring_integrals.size() == b.ring_integrals.size());
        for (std::size_t i = 0; i < a.ring_integrals.size(); ++i)
            CHECK(std::abs(a.ring_integrals[i] - b.ring_integrals[i]) <= 1e-8 * std::abs(b.ring_integrals[i]));
    }
}

TEST_CASE("local ring quadrature") {
    Scenario tri = Scenario::trident();
    CHECK(local_membership(tri, constant(1.0), I, 2.0).status == Verdict::convergent);
    CHECK(local_membership(tri, [](cplx z) { return std::pow(z - I, -0.5); }, I, 2.0).status == Verdict::convergent);
    CHECK(local_membership(tri, [](cplx z) { return std::pow(z - I, -1.5); }, I, 2.0).status == Verdict::divergent);
    CHECK(kind_of([&] { local_membership(tri, constant(1.0), 0.5, 2.0); }) == ErrorKind::precondition);
}

TEST_CASE("local membership agrees with the exponent rule") {
    std::vector<Scenario> scenarios{Scenario::strip_flow(1.0), Scenario::trident(), Scenario::half_strip()};
    for (Scenario const& s : scenarios) {
        for (FixedPoint const& fp : s.fixed_points()) {
            double threshold = 2.0 * fp.alpha / s.p();
            for (double offset : {-0.6, -0.2, -0.05, 0.05, 0.2, 0.6}) {
                cplx mu(threshold + offset, 0.3);
                CAPTURE(s.model_name());
                CAPTURE(fp.zeta);
                CAPTURE(mu);
                Verdict v = local_membership(s, exp_mu_h(s, mu), fp.zeta, s.p()).status;
                Membership rule = membership_rule(mu, fp, s.p());
                if (std::abs(offset) >= 0.2)
                    CHECK(v == (rule == Membership::member ? Verdict::convergent : Verdict::divergent));
                else if (v != Verdict::inconclusive)
                    CHECK(v == (rule == Membership::member ? Verdict::convergent : Verdict::divergent));
            }
        }
    }
}

TEST_CASE("eigenfunctions") {
    Scenario strip = Scenario::strip_flow(1.0);
    Scenario tri_w = Scenario::trident(2.0, {0.0, 0.0, 0.5});
    std::vector<cplx> grid = halton_disk(50, 0.95);
    for (cplx z : grid) {
        CHECK(std::abs(eigenfunction(Scenario::trident(), 0.0)(z) - 1.0) < 1e-15);
        CHECK(std::abs(eigenfunction(strip, 0.5)(z) - std::sqrt((1.0 + z) / (1.0 - z))) < 1e-12);
        CHECK(std::abs(eigenfunction(tri_w, 0.0)(z)) == doctest::Approx(std::pow(std::abs(z - I), -0.5)).epsilon(1e-12));
    }
    CHECK(eigen_identity_residual(strip, 0.0, 1.0, grid) < 1e-12);
    CHECK(eigen_identity_residual(strip, 0.5, 1.0, grid) < 1e-9);
    CHECK(eigen_identity_residual(tri_w, -1.5, 0.7, grid) < 1e-9);
    std::vector<cplx> inner = halton_disk(20, 0.9);
    CHECK(residual_check(strip, 0.5, constant(0.0), eigenfunction(strip, 0.5), inner) < 1e-8);
}

TEST_CASE("growth bound for an eigenfunction") {
    Scenario strip = Scenario::strip_flow(1.0);
    ComplexFunction F = eigenfunction(strip, 0.5);
    MembershipVerdict m = ap_norm_rings(strip, F, 2.0);
    REQUIRE(m.status == Verdict::convergent);
    double ratio = growth_bound_ratio(F, std::sqrt(m.limit), 2.0);
    CHECK(ratio > 0.0);
    CHECK(ratio <= 1.05);
    CHECK(growth_bound_ratio(constant(1.0), std::sqrt(pi), 2.0) == doctest::Approx((1 - 0.99 * 0.99) / std::sqrt(pi)));
}

TEST_CASE("orbit integrals and resolvents, forward anchor") {
    Scenario strip = Scenario::strip_flow(1.0);
    ResolventCertificate c2 = orbit_integral_K(strip, 2.0, constant(1.0), 0, cplx(0.0));
    CHECK(std::abs(c2.K - 0.5) < 1e-10);
    CHECK(c2.region == ResolventRegion::right_of_gamma0);
    CHECK(c2.tail_bound < 1e-12);
    ResolventCertificate c3 = orbit_integral_K(strip, 3.0, constant(1.0), 0);
    CHECK(std::abs(c3.K - 1.0 / 3.0) < 1e-10);

    for (cplx z : halton_disk(20, 0.9)) CHECK(std::abs(resolvent_apply(strip, 2.0, constant(1.0), c2, z) - 0.5) < 1e-8);
    CHECK(std::abs(resolvent_apply(strip, 2.0, constant(1.0), c2, 0.0) - 0.5) < 1e-14);
    ComplexFunction F = resolvent_function(strip, 2.0, constant(1.0), c2);
    CHECK(residual_check(strip, 2.0, constant(1.0), F, halton_disk(20, 0.9)) < 1e-10);

    // A non-constant right-hand side still solves the resolvent equation.
    ComplexFunction f = [](cplx z) { return z * z + 0.5; };
    ResolventCertificate cz = orbit_integral_K(strip, 2.0, f, 0);
    CHECK(residual_check(strip, 2.0, f, resolvent_function(strip, 2.0, f, cz), halton_disk(20, 0.9)) < 1e-7);

    CHECK(kind_of([&] { orbit_integral_K(strip, 0.5, constant(1.0), 0); }) == ErrorKind::divergent_integral);
    CHECK(kind_of([&] { resolvent_apply(strip, 2.0, constant(1.0), c2, 0.9995); }) == ErrorKind::outside_domain);
    CHECK(kind_of([&] { resolvent_apply(strip, 3.0, constant(1.0), c2, 0.1); }) == ErrorKind::precondition);
}

TEST_CASE("orbit integrals and resolvents, repelling anchor") {
    Scenario tri = Scenario::trident(2.0, {0.0, 0.0, 0.5});
    GammaProfile g = profile_of(tri);
    std::optional<std::size_t> anchor = resolvent_anchor(tri, g, -1.5);
    REQUIRE(anchor.has_value());
    CHECK(tri.fixed_points()[*anchor].zeta == I);
    ResolventCertificate cert = orbit_integral_K(tri, -1.5, constant(1.0), *anchor);
    CHECK(cert.region == ResolventRegion::gap_between_gamma2_and_min);
    OrbitOptions half;
    half.step = 0.25;
    ResolventCertificate finer = orbit_integral_K(tri, -1.5, constant(1.0), *anchor, std::nullopt, half);
    CHECK(std::abs(cert.K - finer.K) < 1e-8);
    ComplexFunction F = resolvent_function(tri, -1.5, constant(1.0), cert);
    CHECK(residual_check(tri, -1.5, constant(1.0), F, halton_disk(20, 0.9)) < 1e-5);

    CHECK_FALSE(resolvent_anchor(tri, g, 0.0).has_value());
    CHECK(resolvent_anchor(tri, g, 2.0) == std::optional<std::size_t>(tri.denjoy_wolff_index()));
    CHECK(kind_of([&] { orbit_integral_K(tri, 0.0, constant(1.0), *anchor); }) == ErrorKind::divergent_integral);
}

TEST_CASE("witness integrals between repelling points") {
    Scenario tri = Scenario::trident();
    ComplexFunction f = [](cplx z) { return z; };
    Witness w = nonsurjectivity_witness(tri, -3.0, f);
    OrbitOptions half;
    half.step = 0.25;
    Witness w2 = nonsurjectivity_witness(tri, -3.0, f, half);
    CHECK(std::abs(w.value) > 1e-6);
    CHECK(std::abs(w.value - w2.value) < 1e-8);
    // With f = 1 the form is exact, d(exp(3h)/3), and exp(3h) vanishes at both repelling
    // points, so the integral between them is zero.
    Witness exact = nonsurjectivity_witness(tri, -3.0, constant(1.0));
    CHECK(std::abs(exact.value) < 1e-8);
    CHECK(std::abs(exact.first.K + 1.0 / 3.0) < 1e-8);
    CHECK(kind_of([&] { nonsurjectivity_witness(tri, 0.0, f); }) == ErrorKind::precondition);
    CHECK(kind_of([&] { nonsurjectivity_witness(Scenario::strip_flow(1.0), -3.0, f); }) == ErrorKind::precondition);
}

TEST_CASE("coboundary growth along orbits") {
    Scenario plain = Scenario::strip_flow(1.0);
    CHECK(std::abs(coboundary_growth_exponent(plain, 0, Direction::forward).slope) < 1e-6);
    CHECK(std::abs(coboundary_growth_exponent(plain, 1, Direction::backward).slope) < 1e-6);
    Scenario weighted = Scenario::strip_flow(1.0, 2.0, {0.4, 0.7, 0.0});
    GrowthFit fwd = coboundary_growth_exponent(weighted, 0, Direction::forward);
    GrowthFit bwd = coboundary_growth_exponent(weighted, 1, Direction::backward);
    CHECK(fwd.slope == doctest::Approx(-0.3).epsilon(0.05));
    CHECK(bwd.slope == doctest::Approx(1.1).epsilon(0.05));
    CHECK(fwd.samples == 64);
    CHECK(fwd.t_end > fwd.t_start);
}

TEST_CASE("Cauchy derivative") {
    ComplexFunction f = [](cplx z) { return std::exp(2.0 * z); };
    CHECK(std::abs(cauchy_derivative(f, cplx(0.3, 0.1)) - 2.0 * std::exp(cplx(0.6, 0.2))) < 1e-12);
}
