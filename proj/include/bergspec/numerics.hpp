#pragma once

// Numerical verification on Bergman spaces: A^p integrability by ring quadrature,
// eigenfunction checks, orbit integrals of the form
//     omega_{lambda,f} = exp(-lambda h) h' v f dz,
// resolvent construction and coboundary growth rates.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bergspec/classifier.hpp"
#include "bergspec/scenario.hpp"

namespace bergspec {

using ComplexFunction = std::function<cplx(cplx)>;

enum class Verdict { convergent, divergent, inconclusive };

char const* to_string(Verdict v);

/// Ring layout for A^p integrals. Angular panels are refined geometrically toward the
/// scenario's focus points so boundary singularities stay resolved on every ring.
struct QuadratureGrid {
    int rings = 14;           // r_k = 1 - 2^{-k}, k = 1..rings
    int radial_nodes = 16;    // Gauss-Legendre nodes per ring
    int angular_nodes = 16;   // Gauss-Legendre nodes per angular panel
    int base_panels = 64;     // uniform angular panels before refinement
    int fit_rings = 6;        // trailing ring increments used by the exponent fit
};

struct MembershipVerdict {
    Verdict status = Verdict::inconclusive;
    double fitted_exponent = 0.0;       // tau in increment ~ 2^{-k tau}
    std::vector<double> ring_integrals; // cumulative integrals (global) or ring pieces (local)
    double limit = 0.0;                 // extrapolated integral of |f|^p when convergent
    bool overflow = false;
};

/// Verdict rule: tau > 0.1 convergent, tau < -0.1 divergent, otherwise inconclusive.
Verdict classify_exponent(double tau);

/// Least-squares tau from increments (log2 increment = c - k tau over the given ks).
double fit_decay_exponent(std::vector<double> const& increments, std::vector<int> const& ks);

MembershipVerdict ap_norm_rings(Scenario const& s, ComplexFunction const& f, double p, QuadratureGrid const& grid = {});

/// Integrability of |f|^p on D intersected with a small neighbourhood of zeta (|zeta| = 1),
/// from the pieces {2^{-k-1} < |z - zeta| < 2^{-k}}.
MembershipVerdict local_membership(Scenario const& s, ComplexFunction const& f, cplx zeta, double p,
                                   QuadratureGrid const& grid = {});

/// z -> exp(lambda h(z)) / v(z).
ComplexFunction eigenfunction(Scenario const& s, cplx lambda);

/// max over the grid of |u_t F(phi_t) - exp(lambda t) F|, F = eigenfunction(lambda).
double eigen_identity_residual(Scenario const& s, cplx lambda, double t, std::span<cplx const> grid);

/// max over a circle of radius `radius` of |F(z)| (1 - |z|^2)^{2/p} / norm.
double growth_bound_ratio(ComplexFunction const& F, double norm, double p, double radius = 0.99, int samples = 512);

enum class ResolventRegion { right_of_gamma0, gap_between_gamma2_and_min, below_gamma2 };

char const* to_string(ResolventRegion r);

struct ResolventCertificate {
    cplx lambda;
    ResolventRegion region = ResolventRegion::right_of_gamma0;
    cplx K;
    double tail_bound = 0.0;
    std::size_t anchor = 0;  // index into fixed_points()
    cplx base;
    double horizon = 0.0;    // orbit time at which the tail bound was met
};

struct OrbitOptions {
    double tolerance = 1e-12;
    double step = 0.5;       // orbit-time panel length
    double epsilon = 0.05;   // margin in the exponential tail rate
    double t_max = 200.0;
};

/// gamma_j = 2 alpha_j / p + Re beta_j from the declared data of fixed point `index`.
ExtReal declared_gamma(Scenario const& s, std::size_t index);

/// K = integral of omega from 0 to the anchor fixed point: a straight segment from 0 to the
/// base point, then the forward orbit (Denjoy-Wolff anchor) or the backward orbit inside the
/// petal (repelling anchor).
ResolventCertificate orbit_integral_K(Scenario const& s, cplx lambda, ComplexFunction const& f, std::size_t anchor,
                                      std::optional<cplx> base = std::nullopt, OrbitOptions const& options = {});

/// Integral of omega from 0 to z along the straight segment.
cplx segment_integral(Scenario const& s, cplx lambda, ComplexFunction const& f, cplx z, double tolerance = 1e-13);

/// F(z) = exp(lambda h(z)) / v(z) (K - integral_0^z omega).
cplx resolvent_apply(Scenario const& s, cplx lambda, ComplexFunction const& f, ResolventCertificate const& cert, cplx z);

ComplexFunction resolvent_function(Scenario const& s, cplx lambda, ComplexFunction f, ResolventCertificate cert);

/// Derivative of an analytic F by the trapezoid rule on a small circle.
cplx cauchy_derivative(ComplexFunction const& F, cplx z, double radius = 0.02, int nodes = 16);

/// max over the grid of |lambda F - F'/h' - g F - f|.
double residual_check(Scenario const& s, cplx lambda, ComplexFunction const& f, ComplexFunction const& F,
                      std::span<cplx const> grid);

/// Anchor for the resolvent at lambda: the Denjoy-Wolff point right of the spectrum, the
/// leading repelling point in the gap below it; nullopt inside the spectrum.
std::optional<std::size_t> resolvent_anchor(Scenario const& s, GammaProfile const& g, cplx lambda);

struct Witness {
    cplx value;
    ResolventCertificate first;   // leading repelling point
    ResolventCertificate second;  // next repelling point
};

/// integral of omega between the two leading repelling points, K_2 - K_1. Requires
/// Re lambda < gamma_2 and at least two repelling points.
Witness nonsurjectivity_witness(Scenario const& s, cplx lambda, ComplexFunction const& f, OrbitOptions const& options = {});

enum class Direction { forward, backward };

struct GrowthFit {
    double slope = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
    int samples = 0;
};

/// Slope of log|v| along an orbit: forward from 0 toward the Denjoy-Wolff point, or backward
/// from the petal anchor toward a repelling point (slope taken against -t). Orbit times are
/// clipped where the orbit gets within 1e-10 of the circle.
GrowthFit coboundary_growth_exponent(Scenario const& s, std::size_t index, Direction direction,
                                     double t_start = 5.0, double t_end = 40.0);

}  // namespace bergspec
