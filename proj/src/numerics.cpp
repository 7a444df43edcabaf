#include "bergspec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bergspec/error.hpp"
#include "bergspec/grid.hpp"
#include "bergspec/quadrature.hpp"

namespace bergspec {

char const* to_string(Verdict v) {
    switch (v) {
        case Verdict::convergent: return "convergent";
        case Verdict::divergent: return "divergent";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

char const* to_string(ResolventRegion r) {
    switch (r) {
        case ResolventRegion::right_of_gamma0: return "right_of_gamma0";
        case ResolventRegion::gap_between_gamma2_and_min: return "gap_between_gamma2_and_min";
        case ResolventRegion::below_gamma2: return "below_gamma2";
    }
    return "?";
}

Verdict classify_exponent(double tau) {
    if (tau > 0.1) return Verdict::convergent;
    if (tau < -0.1) return Verdict::divergent;
    return Verdict::inconclusive;
}

double fit_decay_exponent(std::vector<double> const& increments, std::vector<int> const& ks) {
    if (increments.size() != ks.size() || increments.size() < 2)
        throw std::invalid_argument("fit_decay_exponent: need at least two matching samples");
    double n = double(ks.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        double x = ks[i];
        double y = std::log2(std::max(increments[i], std::numeric_limits<double>::min()));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

namespace {

struct Overflow {};

double power_abs(ComplexFunction const& f, cplx z, double p) {
    cplx value = f(z);
    if (std::isnan(value.real()) || std::isnan(value.imag()))
        throw Error(ErrorKind::evaluation, "integrand evaluated to NaN");
    double m = std::pow(std::abs(value), p);
    if (!std::isfinite(m)) throw Overflow{};
    return m;
}

// Angular breakpoints on [theta0, theta0 + 2 pi]: a uniform base grid plus geometric
// refinement toward every focus angle.
std::vector<double> angular_breakpoints(std::vector<cplx> const& focus, int base_panels, int levels) {
    double base = 2.0 * pi / base_panels;
    std::vector<double> pts;
    for (int j = 0; j < base_panels; ++j) pts.push_back(j * base);
    for (cplx f : focus) {
        double phi = std::arg(f);
        pts.push_back(phi);
        for (int m = 1; m <= levels; ++m) {
            double d = base * std::ldexp(1.0, -m);
            pts.push_back(phi + d);
            pts.push_back(phi - d);
        }
    }
    for (double& x : pts) {
        x = std::fmod(x, 2.0 * pi);
        if (x < 0) x += 2.0 * pi;
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double x : pts)
        if (out.empty() || x - out.back() > 1e-14) out.push_back(x);
    if (2.0 * pi + out.front() - out.back() <= 1e-14) out.pop_back();
    out.push_back(out.front() + 2.0 * pi);
    return out;
}

MembershipVerdict finish_verdict(std::vector<double> pieces, std::vector<int> const& ks, int fit_rings,
                                 std::vector<double> reported, double total) {
    MembershipVerdict out;
    out.ring_integrals = std::move(reported);
    int n = int(pieces.size());
    int take = std::min(fit_rings, n);
    std::vector<double> inc(pieces.end() - take, pieces.end());
    std::vector<int> kk(ks.end() - take, ks.end());
    bool all_zero = std::all_of(inc.begin(), inc.end(), [](double x) { return x == 0.0; });
    if (all_zero) {
        out.status = Verdict::convergent;
        out.fitted_exponent = 0.0;
        out.limit = total;
        return out;
    }
    out.fitted_exponent = fit_decay_exponent(inc, kk);
    out.status = classify_exponent(out.fitted_exponent);
    if (out.status == Verdict::convergent) {
        double q = std::exp2(-out.fitted_exponent);
        out.limit = total + inc.back() * q / (1.0 - q);
    }
    return out;
}

MembershipVerdict overflow_verdict(std::vector<double> reported) {
    MembershipVerdict out;
    out.status = Verdict::divergent;
    out.overflow = true;
    out.fitted_exponent = -std::numeric_limits<double>::max();
    out.ring_integrals = std::move(reported);
    return out;
}

}  // namespace

MembershipVerdict ap_norm_rings(Scenario const& s, ComplexFunction const& f, double p, QuadratureGrid const& grid) {
    if (grid.rings < 3) throw std::invalid_argument("ap_norm_rings: need at least three rings");
    GaussLegendre radial(grid.radial_nodes), angular(grid.angular_nodes);
    std::vector<double> breaks = angular_breakpoints(s.focus_points(), grid.base_panels, grid.rings + 4);

    // Angular nodes and weights are shared by every ring.
    std::vector<double> th, thw, x, w;
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
        angular.map(breaks[j], breaks[j + 1], x, w);
        th.insert(th.end(), x.begin(), x.end());
        thw.insert(thw.end(), w.begin(), w.end());
    }
    std::vector<cplx> dirs(th.size());
    for (std::size_t j = 0; j < th.size(); ++j) dirs[j] = std::polar(1.0, th[j]);

    std::vector<double> pieces, cumulative;
    std::vector<int> ks;
    double total = 0.0;
    std::vector<double> rr, rw;
    try {
        for (int k = 1; k <= grid.rings; ++k) {
            double r0 = k == 1 ? 0.0 : 1.0 - std::ldexp(1.0, -(k - 1));
            double r1 = 1.0 - std::ldexp(1.0, -k);
            radial.map(r0, r1, rr, rw);
            double piece = 0.0;
            for (std::size_t i = 0; i < rr.size(); ++i) {
                double ring = 0.0;
                for (std::size_t j = 0; j < dirs.size(); ++j) ring += thw[j] * power_abs(f, rr[i] * dirs[j], p);
                piece += rw[i] * rr[i] * ring;
            }
            pieces.push_back(piece);
            total += piece;
            cumulative.push_back(total);
            ks.push_back(k - 1);  // piece k is the increment I_k - I_{k-1}
        }
    } catch (Overflow const&) {
        return overflow_verdict(cumulative);
    }
    // Increments I_{k+1} - I_k exist for k = 1..rings-1.
    pieces.erase(pieces.begin());
    ks.erase(ks.begin());
    return finish_verdict(pieces, ks, grid.fit_rings, cumulative, total);
}

MembershipVerdict local_membership(Scenario const& s, ComplexFunction const& f, cplx zeta, double p,
                                   QuadratureGrid const& grid) {
    (void)s;
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw Error(ErrorKind::precondition, "local membership needs |zeta| = 1");
    constexpr int psi_panels = 4;
    GaussLegendre radial(grid.radial_nodes), angular(grid.angular_nodes);
    std::vector<double> pieces;
    std::vector<int> ks;
    double total = 0.0;
    std::vector<double> rr, rw, x, w;
    try {
        for (int k = 1; k <= grid.rings; ++k) {
            double rho_hi = std::ldexp(1.0, -k), rho_lo = std::ldexp(1.0, -k - 1);
            radial.map(rho_lo, rho_hi, rr, rw);
            double piece = 0.0;
            for (std::size_t i = 0; i < rr.size(); ++i) {
                double rho = rr[i];
                double psi_max = std::acos(0.5 * rho);
                double inner = 0.0;
                for (int q = 0; q < psi_panels; ++q) {
                    double a = -psi_max + 2.0 * psi_max * q / psi_panels;
                    double b = -psi_max + 2.0 * psi_max * (q + 1) / psi_panels;
                    angular.map(a, b, x, w);
                    for (std::size_t j = 0; j < x.size(); ++j) {
                        cplx z = zeta * (1.0 - std::polar(rho, x[j]));
                        inner += w[j] * power_abs(f, z, p);
                    }
                }
                piece += rw[i] * rho * inner;
            }
            pieces.push_back(piece);
            ks.push_back(k);
            total += piece;
        }
    } catch (Overflow const&) {
        return overflow_verdict(pieces);
    }
    return finish_verdict(pieces, ks, grid.fit_rings, pieces, total);
}

ComplexFunction eigenfunction(Scenario const& s, cplx lambda) {
    return [s, lambda](cplx z) { return std::exp(lambda * s.h(z)) / s.v(z); };
}

double eigen_identity_residual(Scenario const& s, cplx lambda, double t, std::span<cplx const> grid) {
    ComplexFunction F = eigenfunction(s, lambda);
    cplx factor = std::exp(lambda * t);
    double worst = 0.0;
    for (cplx z : grid) {
        cplx lhs = s.cocycle(t, z) * F(s.flow(t, z));
        worst = std::max(worst, std::abs(lhs - factor * F(z)));
    }
    return worst;
}

double growth_bound_ratio(ComplexFunction const& F, double norm, double p, double radius, int samples) {
    if (!(norm > 0)) throw Error(ErrorKind::precondition, "growth bound needs a positive norm");
    double weight = std::pow(1.0 - radius * radius, 2.0 / p);
    double worst = 0.0;
    for (cplx z : circle_points(samples, radius)) worst = std::max(worst, std::abs(F(z)) * weight / norm);
    return worst;
}

ExtReal declared_gamma(Scenario const& s, std::size_t index) {
    FixedPoint const& fp = s.fixed_points().at(index);
    return fp.beta.real() + 2.0 * fp.alpha / s.p();
}

namespace {

// Index of the repelling fixed points ordered by declared gamma, largest first; ties keep
// declaration order.
std::vector<std::size_t> repelling_by_gamma(Scenario const& s) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.fixed_points().size(); ++i)
        if (s.fixed_points()[i].role == Role::repelling) idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return declared_gamma(s, b) < declared_gamma(s, a); });
    return idx;
}

bool is_orbit_exit(Error const& e) {
    switch (e.kind()) {
        case ErrorKind::outside_domain:
        case ErrorKind::petal_exit:
        case ErrorKind::inversion_failure:
        case ErrorKind::evaluation: return true;
        default: return false;
    }
}

}  // namespace

cplx segment_integral(Scenario const& s, cplx lambda, ComplexFunction const& f, cplx z, double tolerance) {
    if (z == cplx(0.0)) return 0.0;
    auto integrand = [&](double u) {
        cplx xi = u * z;
        Jet hj = s.h_jet(xi);
        return std::exp(-lambda * hj.value) * hj.d1 * s.v(xi) * f(xi) * z;
    };
    return integrate_adaptive(integrand, 0.0, 1.0, tolerance);
}

ResolventCertificate orbit_integral_K(Scenario const& s, cplx lambda, ComplexFunction const& f, std::size_t anchor,
                                      std::optional<cplx> base, OrbitOptions const& options) {
    FixedPoint const& fp = s.fixed_points().at(anchor);
    ExtReal gamma = declared_gamma(s, anchor);
    bool forward = fp.role == Role::denjoy_wolff;
    double re = lambda.real();
    if (forward ? !(gamma < ExtReal(re)) : !(ExtReal(re) < gamma))
        throw Error(ErrorKind::divergent_integral,
                    forward ? "orbit integral toward the Denjoy-Wolff point needs Re lambda > gamma_0"
                            : "orbit integral toward a repelling point needs Re lambda < gamma_j");

    ResolventCertificate cert;
    cert.lambda = lambda;
    cert.anchor = anchor;
    cert.base = base ? *base : (forward ? cplx(0.0) : s.petal_anchor(anchor));
    if (forward) {
        cert.region = ResolventRegion::right_of_gamma0;
    } else {
        std::vector<std::size_t> order = repelling_by_gamma(s);
        bool above_second = order.size() < 2 || declared_gamma(s, order[1]) < ExtReal(re);
        cert.region = above_second ? ResolventRegion::gap_between_gamma2_and_min : ResolventRegion::below_gamma2;
    }

    // Exponential rate used in the tail bound; with gamma = -inf any rate works.
    double gap = gamma.is_neg_inf() ? 1.0 : std::abs(re - gamma.value());
    double kappa = gap - options.epsilon;
    if (kappa <= 0) kappa = 0.5 * gap;

    cplx hb = s.h(cert.base);
    double sign = forward ? 1.0 : -1.0;
    auto integrand = [&](double t) {
        cplx w = hb + sign * t;
        cplx z = s.h_inverse(w);
        return sign * std::exp(-lambda * w) * s.v(z) * f(z);
    };

    cplx orbit = 0.0;
    double T = 0.0;
    double tail = std::numeric_limits<double>::infinity();
    double panel_tol = options.tolerance * 1e-2;
    try {
        while (true) {
            if (T >= options.t_max)
                throw ToleranceFailure("orbit integral tail bound not met within t_max", tail);
            double next = T + options.step;
            orbit += integrate_adaptive(integrand, T, next, panel_tol);
            T = next;
            // Tail constant from the last tenth of [0, T], inflated tenfold.
            double C = 0.0;
            constexpr int samples = 8;
            for (int i = 0; i <= samples; ++i) {
                double t = T * (0.9 + 0.1 * i / samples);
                C = std::max(C, std::abs(integrand(t)) * std::exp(kappa * (t - T)));
            }
            tail = 10.0 * C / kappa;  // C e^{kappa T} e^{-kappa T} / kappa
            if (tail < options.tolerance) break;
        }
    } catch (Error const& e) {
        if (e.kind() == ErrorKind::tolerance_failure || !is_orbit_exit(e)) throw;
        throw ToleranceFailure(std::string("orbit left the representable range: ") + e.what(), tail);
    }
    cert.K = segment_integral(s, lambda, f, cert.base, options.tolerance * 1e-1) + orbit;
    cert.tail_bound = tail;
    cert.horizon = T;
    return cert;
}

cplx resolvent_apply(Scenario const& s, cplx lambda, ComplexFunction const& f, ResolventCertificate const& cert, cplx z) {
    if (cert.lambda != lambda) throw Error(ErrorKind::precondition, "certificate was issued for a different lambda");
    if (std::abs(z) > 0.999) throw Error(ErrorKind::outside_domain, "resolvent evaluation rejected for |z| > 0.999");
    return std::exp(lambda * s.h(z)) / s.v(z) * (cert.K - segment_integral(s, lambda, f, z));
}

ComplexFunction resolvent_function(Scenario const& s, cplx lambda, ComplexFunction f, ResolventCertificate cert) {
    return [s, lambda, f = std::move(f), cert = std::move(cert)](cplx z) { return resolvent_apply(s, lambda, f, cert, z); };
}

cplx cauchy_derivative(ComplexFunction const& F, cplx z, double radius, int nodes) {
    cplx sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
        cplx e = std::polar(1.0, 2.0 * pi * k / nodes);
        sum += F(z + radius * e) / e;
    }
    return sum / (double(nodes) * radius);
}

double residual_check(Scenario const& s, cplx lambda, ComplexFunction const& f, ComplexFunction const& F,
                      std::span<cplx const> grid) {
    double worst = 0.0;
    for (cplx z : grid) {
        if (std::abs(z) > 0.9 + 1e-12) throw Error(ErrorKind::precondition, "residual grid must lie in |z| <= 0.9");
        cplx Fz = F(z);
        cplx r = lambda * Fz - cauchy_derivative(F, z) / s.h_prime(z) - s.generator_g(z) * Fz - f(z);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

std::optional<std::size_t> resolvent_anchor(Scenario const& s, GammaProfile const& g, cplx lambda) {
    ExtReal re(lambda.real());
    if (max(g.gamma0(), g.gamma1()) < re) return s.denjoy_wolff_index();
    if (g.gamma2() < re && re < min(g.gamma0(), g.gamma1())) {
        std::vector<std::size_t> order = repelling_by_gamma(s);
        if (!order.empty()) return order.front();
    }
    return std::nullopt;
}

Witness nonsurjectivity_witness(Scenario const& s, cplx lambda, ComplexFunction const& f, OrbitOptions const& options) {
    std::vector<std::size_t> order = repelling_by_gamma(s);
    if (order.size() < 2) throw Error(ErrorKind::precondition, "witness needs at least two repelling fixed points");
    if (!(ExtReal(lambda.real()) < declared_gamma(s, order[1])))
        throw Error(ErrorKind::precondition, "witness needs Re lambda < gamma_2");
    Witness out;
    out.first = orbit_integral_K(s, lambda, f, order[0], std::nullopt, options);
    out.second = orbit_integral_K(s, lambda, f, order[1], std::nullopt, options);
    out.value = out.second.K - out.first.K;
    return out;
}

GrowthFit coboundary_growth_exponent(Scenario const& s, std::size_t index, Direction direction, double t_start,
                                     double t_end) {
    FixedPoint const& fp = s.fixed_points().at(index);
    if (fp.beta.neg_inf) throw Error(ErrorKind::precondition, "growth exponent undefined for beta = -inf");
    bool forward = direction == Direction::forward;
    if (forward != (fp.role == Role::denjoy_wolff))
        throw Error(ErrorKind::precondition, "forward orbits reach the Denjoy-Wolff point, backward orbits a repelling point");
    cplx z0 = forward ? cplx(0.0) : s.petal_anchor(index);
    cplx h0 = s.h(z0);
    double sign = forward ? 1.0 : -1.0;
    auto point = [&](double t) { return s.h_inverse(h0 + sign * t); };

    // Largest usable orbit time: stop where the orbit comes within 1e-10 of the circle.
    constexpr double scan = 0.25;
    double usable = 0.0;
    for (double t = scan; t <= t_end + 1e-12; t += scan) {
        try {
            if (1.0 - std::abs(point(t)) < 1e-10) break;
        } catch (Error const& e) {
            if (!is_orbit_exit(e)) throw;
            break;
        }
        usable = t;
    }
    double t1 = std::min(t_end, usable);
    double t0 = std::min(t_start, 0.5 * t1);
    if (!(t1 > t0)) throw Error(ErrorKind::evaluation, "orbit leaves the representable range immediately");

    constexpr int samples = 64;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < samples; ++i) {
        double t = t0 + (t1 - t0) * i / (samples - 1);
        double x = sign * t;
        double y = std::log(std::abs(s.v(point(t))));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    GrowthFit fit;
    fit.slope = (samples * sxy - sx * sy) / (samples * sxx - sx * sx);
    fit.t_start = t0;
    fit.t_end = t1;
    fit.samples = samples;
    return fit;
}

}  // namespace bergspec
