#include "bergspec/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "bergspec/error.hpp"
#include "bergspec/expr.hpp"
#include "bergspec/grid.hpp"

namespace bergspec {

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

Json number(double x) {
    if (std::isinf(x)) return x < 0 ? Json("-inf") : Json("inf");
    if (std::isnan(x)) return Json("nan");
    return Json(round12(x));
}

Json number(ExtReal x) { return number(x.value()); }

Json complex_json(cplx z) { return Json::array({number(z.real()), number(z.imag())}); }

Json to_json(Component const& c) {
    Json params = Json::array();
    switch (c.kind) {
        case ComponentKind::half_plane_left:
        case ComponentKind::vline:
        case ComponentKind::disk:
        case ComponentKind::circle: params.push_back(number(c.hi)); break;
        default:
            params.push_back(number(c.lo));
            params.push_back(number(c.hi));
    }
    Json j;
    j["kind"] = to_string(c.kind);
    j["params"] = params;
    j["certainty"] = to_string(c.certainty);
    return j;
}

Json to_json(SpectralRegion const& r) {
    Json out = Json::array();
    for (Component const& c : r.components()) out.push_back(to_json(c));
    return out;
}

Json to_json(GammaProfile const& g) {
    Json j;
    j["p"] = number(g.p());
    j["gamma0"] = number(g.gamma0());
    j["gamma1"] = number(g.gamma1());
    j["gamma2"] = number(g.gamma2());
    Json all = Json::array();
    for (ExtReal x : g.gammas()) all.push_back(number(x));
    j["repelling"] = all;
    return j;
}

Json scenario_json(Scenario const& s) {
    Json j;
    j["model"] = s.model_name();
    j["p"] = number(s.p());
    switch (s.kind()) {
        case ModelKind::strip_flow: j["a"] = number(s.a()); [[fallthrough]];
        case ModelKind::half_strip:
        case ModelKind::trident: {
            WeightParams w = s.weights();
            j["weights"] = {{"c", number(w.c)}, {"s", number(w.s)}, {"d", number(w.d)}};
            break;
        }
        case ModelKind::expression:
            j["h"] = s.h_source();
            j["v"] = s.v_source();
            break;
        case ModelKind::parametric: break;
    }
    Json fps = Json::array();
    for (FixedPoint const& fp : s.fixed_points()) {
        Json f;
        f["zeta"] = complex_json(fp.zeta);
        f["alpha"] = number(fp.alpha);
        f["beta"] = fp.beta.neg_inf ? Json("-inf") : complex_json(fp.beta.value);
        f["role"] = to_string(fp.role);
        fps.push_back(f);
    }
    j["fixed_points"] = fps;
    return j;
}

int exit_code(RunStatus const& status) {
    if (status.verification_failed) return 1;
    if (status.coverage_error) return 3;
    return 0;
}

std::string dump(Json const& j) { return j.dump(2) + "\n"; }

cplx parse_complex(std::string const& text) {
    AnalyticExpr e = AnalyticExpr::parse(text);
    if (!e.is_constant()) throw ConfigError("expected a complex constant, got '" + text + "'");
    return e(0.0);
}

namespace {

template <class F>
Json guarded(F&& f, RunStatus& status) {
    try {
        return f();
    } catch (CoverageError const& e) {
        status.coverage_error = true;
        return Json{{"coverage_error", {{"item", e.item()}, {"message", e.what()}}}};
    } catch (Error const& e) {
        if (e.kind() != ErrorKind::precondition) throw;
        return Json{{"not_applicable", e.what()}};
    }
}

char const* spectrum_case(GammaProfile const& g) {
    if (g.gamma0().is_neg_inf()) return nullptr;
    if (g.gamma0() >= g.gamma1()) return "i";
    if (g.gamma2() < g.gamma0()) return "ii";
    return "iii";
}

struct Tally {
    int pass = 0, fail = 0, inconclusive = 0;
};

// Records a check and updates the tallies.
Json check(std::string const& name, Json value, Json tolerance, char const* status, bool hard, Tally& tally,
           RunStatus& run) {
    std::string st = status;
    if (st == "pass") ++tally.pass;
    else if (st == "fail") {
        ++tally.fail;
        if (hard) run.verification_failed = true;
    } else ++tally.inconclusive;
    Json j;
    j["check"] = name;
    j["value"] = std::move(value);
    j["tolerance"] = std::move(tolerance);
    j["status"] = st;
    j["hard"] = hard;
    return j;
}

char const* below(double value, double tol) { return value < tol ? "pass" : "fail"; }

Json failure(std::string const& name, Error const& e, Tally& tally, RunStatus& run, bool hard = true) {
    Json j = check(name, nullptr, nullptr, "fail", hard, tally, run);
    j["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    if (auto const* tf = dynamic_cast<ToleranceFailure const*>(&e)) j["achieved"] = number(tf->achieved());
    return j;
}

std::vector<cplx> const& identity_grid() {
    static std::vector<cplx> const grid = halton_disk(100, 0.95);
    return grid;
}

std::vector<cplx> const& residual_grid() {
    static std::vector<cplx> const grid = halton_disk(20, 0.9);
    return grid;
}

Json model_checks(Scenario const& s, Tolerances const& tol, Tally& tally, RunStatus& run) {
    Json out = Json::array();
    for (std::size_t i = 0; i < s.fixed_points().size(); ++i) {
        FixedPoint const& fp = s.fixed_points()[i];
        Json entry;
        entry["index"] = i;
        try {
            AlphaEstimate a = alpha_at(s, i, tol.alpha);
            Json c = check("alpha", number(a.value()), number(tol.alpha), "pass", true, tally, run);
            c["declared"] = number(a.declared);
            c["difference_quotient"] = number(a.difference_quotient);
            c["generator_derivative"] = number(a.generator_derivative);
            entry["alpha"] = c;
        } catch (Error const& e) {
            entry["alpha"] = failure("alpha", e, tally, run);
        }
        try {
            Beta b = beta_at(s, i);
            bool ok;
            if (b.neg_inf || fp.beta.neg_inf) ok = b.neg_inf == fp.beta.neg_inf;
            else ok = std::abs(b.value - fp.beta.value) <= 1e-4 * (1.0 + std::abs(fp.beta.value));
            Json value = b.neg_inf ? Json("-inf") : complex_json(b.value);
            entry["beta"] = check("beta", value, number(1e-4), ok ? "pass" : "fail", true, tally, run);
        } catch (Error const& e) {
            if (e.kind() != ErrorKind::no_boundary_limit) throw;
            Json c = check("beta", nullptr, number(1e-4), "inconclusive", true, tally, run);
            c["message"] = e.what();
            entry["beta"] = c;
        }
        out.push_back(entry);
    }
    return out;
}

Json growth_checks(Scenario const& s, Tolerances const& tol, Tally& tally, RunStatus& run) {
    Json out = Json::array();
    for (std::size_t i = 0; i < s.fixed_points().size(); ++i) {
        FixedPoint const& fp = s.fixed_points()[i];
        if (fp.beta.neg_inf) continue;
        bool forward = fp.role == Role::denjoy_wolff;
        if (!forward && !s.has_petal_anchor(i)) continue;
        double expected = fp.beta.value.real();
        // Relative tolerance; the scale floor keeps beta = 0 checks meaningful for non-constant v.
        double allowed = tol.growth * std::max(std::abs(expected), 0.01);
        try {
            GrowthFit fit = coboundary_growth_exponent(s, i, forward ? Direction::forward : Direction::backward);
            double err = std::abs(fit.slope - expected);
            Json c = check("growth_exponent", number(fit.slope), number(allowed), err <= allowed ? "pass" : "fail", true,
                           tally, run);
            c["index"] = i;
            c["direction"] = forward ? "forward" : "backward";
            c["expected"] = number(expected);
            c["window"] = Json::array({number(fit.t_start), number(fit.t_end)});
            out.push_back(c);
        } catch (Error const& e) {
            Json c = failure("growth_exponent", e, tally, run);
            c["index"] = i;
            out.push_back(c);
        }
    }
    return out;
}

Json eigen_checks(Scenario const& s, GammaProfile const& g, cplx lambda, std::vector<double> const& ts,
                  Tolerances const& tol, Tally& tally, RunStatus& run) {
    Json out;
    SpectralRegion sp = generator_point_spectrum(g);
    char const* expected = sp.contains(lambda, Certainty::certified) ? "member"
                           : sp.contains(lambda)                     ? "unresolved"
                                                                     : "non_member";
    ComplexFunction F = eigenfunction(s, lambda);
    MembershipVerdict m = ap_norm_rings(s, F, s.p());
    std::string exp = expected;
    char const* status = "inconclusive";
    if (m.status != Verdict::inconclusive && exp != "unresolved") {
        bool member = m.status == Verdict::convergent;
        status = member == (exp == "member") ? "pass" : "fail";
    }
    Json mem = check("membership", to_string(m.status), number(0.1), status, true, tally, run);
    mem["expected"] = expected;
    mem["fitted_exponent"] = number(m.fitted_exponent);
    mem["overflow"] = m.overflow;
    if (m.status == Verdict::convergent) mem["norm_p"] = number(m.limit);
    out["membership"] = mem;

    Json identity = Json::array();
    for (double t : ts) {
        try {
            // Measured relative to the size of exp(lambda t) F on the grid.
            double scale = 1.0;
            for (cplx z : identity_grid()) scale = std::max(scale, std::abs(std::exp(lambda * t) * F(z)));
            double r = eigen_identity_residual(s, lambda, t, identity_grid()) / scale;
            Json c = check("eigen_identity", number(r), number(tol.identity), below(r, tol.identity), true, tally, run);
            c["t"] = number(t);
            c["scale"] = number(scale);
            identity.push_back(c);
        } catch (Error const& e) {
            Json c = failure("eigen_identity", e, tally, run);
            c["t"] = number(t);
            identity.push_back(c);
        }
    }
    out["identity"] = identity;

    if (m.status == Verdict::convergent) {
        try {
            double r = residual_check(s, lambda, [](cplx) { return cplx(0.0); }, F, residual_grid());
            out["generator_residual"] =
                check("generator_residual", number(r), number(tol.eigen_residual), below(r, tol.eigen_residual), true,
                      tally, run);
        } catch (Error const& e) {
            out["generator_residual"] = failure("generator_residual", e, tally, run);
        }
        double norm = std::pow(m.limit, 1.0 / s.p());
        double ratio = growth_bound_ratio(F, norm, s.p());
        out["growth_bound"] = check("growth_bound", number(ratio), number(tol.growth_bound),
                                    ratio <= tol.growth_bound ? "pass" : "fail", true, tally, run);
    }
    return out;
}

Json resolvent_checks(Scenario const& s, GammaProfile const& g, cplx lambda, Tolerances const& tol, Tally& tally,
                      RunStatus& run) {
    std::optional<std::size_t> anchor = resolvent_anchor(s, g, lambda);
    if (!anchor) return Json{{"applicable", false}};
    ComplexFunction one = [](cplx) { return cplx(1.0); };
    OrbitOptions opt;
    opt.tolerance = tol.orbit;
    Json out;
    out["applicable"] = true;
    try {
        ResolventCertificate cert = orbit_integral_K(s, lambda, one, *anchor, std::nullopt, opt);
        out["anchor_index"] = cert.anchor;
        out["anchor"] = complex_json(s.fixed_points()[cert.anchor].zeta);
        out["region"] = to_string(cert.region);
        out["K"] = complex_json(cert.K);
        out["tail_bound"] = number(cert.tail_bound);
        out["horizon"] = number(cert.horizon);
        double r = residual_check(s, lambda, one, resolvent_function(s, lambda, one, cert), residual_grid());
        out["residual"] = check("resolvent_residual", number(r), number(tol.resolvent), below(r, tol.resolvent), true,
                                tally, run);
    } catch (Error const& e) {
        out["residual"] = failure("resolvent_residual", e, tally, run);
    }
    return out;
}

Json witness_checks(Scenario const& s, GammaProfile const& g, cplx lambda, Tolerances const& tol, Tally& tally,
                    RunStatus& run) {
    std::size_t repelling = 0;
    for (FixedPoint const& fp : s.fixed_points()) repelling += fp.role == Role::repelling;
    if (repelling < 2 || !(ExtReal(lambda.real()) < g.gamma2())) return Json{{"applicable", false}};
    OrbitOptions opt;
    opt.tolerance = tol.orbit;
    Json out;
    out["applicable"] = true;
    Json probes = Json::array();
    double best = 0.0;
    try {
        std::vector<std::pair<char const*, ComplexFunction>> fs = {{"1", [](cplx) { return cplx(1.0); }},
                                                                   {"z", [](cplx z) { return z; }}};
        for (auto const& [name, f] : fs) {
            Witness w = nonsurjectivity_witness(s, lambda, f, opt);
            probes.push_back({{"f", name}, {"value", complex_json(w.value)}});
            best = std::max(best, std::abs(w.value));
        }
        out["probes"] = probes;
        out["nonzero"] = check("witness", number(best), number(tol.witness), best > tol.witness ? "pass" : "fail", true,
                               tally, run);
    } catch (Error const& e) {
        out["probes"] = probes;
        out["nonzero"] = failure("witness", e, tally, run);
    }
    return out;
}

char const* lambda_position(GammaProfile const& g, cplx lambda) {
    ExtReal re(lambda.real());
    if (generator_point_spectrum(g).contains(lambda, Certainty::certified)) return "point_spectrum";
    try {
        if (!generator_spectrum(g).contains(lambda)) return "resolvent_set";
    } catch (CoverageError const&) {
        return "outside_coverage";
    }
    return re < g.gamma2() ? "spectrum_below_gamma2" : "spectrum";
}

}  // namespace

Json classify_report(Scenario const& s, std::vector<double> const& ts, RunStatus& status) {
    GammaProfile g = gammas_from(s.fixed_points(), s.p());
    Json j;
    j["scenario"] = scenario_json(s);
    j["gamma_profile"] = to_json(g);
    char const* c = spectrum_case(g);
    j["case"] = c ? Json(c) : Json(nullptr);
    Json regions;
    regions["generator_spectrum"] = guarded([&] { return to_json(generator_spectrum(g)); }, status);
    regions["essential_spectrum"] = guarded([&] { return to_json(essential_spectrum(g)); }, status);
    regions["point_spectrum"] = guarded([&] { return to_json(generator_point_spectrum(g)); }, status);
    j["regions"] = regions;
    Json ops = Json::array();
    for (double t : ts) {
        Json o;
        o["t"] = number(t);
        o["radius"] = guarded(
            [&] {
                OperatorRadius r = operator_radius(g, t);
                return Json{{"value", number(r.value)}, {"quasinilpotent", r.quasinilpotent}, {"exact", r.exact}};
            },
            status);
        o["spectrum"] = guarded([&] { return to_json(operator_spectrum(g, t)); }, status);
        o["point_spectrum"] = guarded([&] { return to_json(operator_point_spectrum(g, t)); }, status);
        ops.push_back(o);
    }
    j["operator"] = ops;
    return j;
}

Json verify_report(Scenario const& s, std::vector<cplx> const& lambdas, std::vector<double> const& ts,
                   Tolerances const& tol, RunStatus& status) {
    GammaProfile g = gammas_from(s.fixed_points(), s.p());
    Tally tally;
    Json j;
    j["scenario"] = scenario_json(s);
    j["gamma_profile"] = to_json(g);
    if (!s.evaluable()) {
        j["numerics"] = "not_applicable";
        return j;
    }
    j["model_checks"] = model_checks(s, tol, tally, status);
    j["growth_exponents"] = growth_checks(s, tol, tally, status);
    Json per = Json::array();
    for (cplx lambda : lambdas) {
        Json l;
        l["lambda"] = complex_json(lambda);
        l["position"] = lambda_position(g, lambda);
        l["eigenfunction"] = eigen_checks(s, g, lambda, ts, tol, tally, status);
        l["resolvent"] = resolvent_checks(s, g, lambda, tol, tally, status);
        l["witness"] = witness_checks(s, g, lambda, tol, tally, status);
        per.push_back(l);
    }
    j["lambdas"] = per;
    j["summary"] = {{"pass", tally.pass}, {"fail", tally.fail}, {"inconclusive", tally.inconclusive}};
    return j;
}

Json truncate_report(Scenario const& s, double t, int N, int n_max, Tolerances const& tol, RunStatus& status) {
    TruncationMatrix M = build_matrix(s, t, N);
    GelfandEstimate est = gelfand_radius(M.entries, n_max);
    std::vector<cplx> cloud = eigen_cloud(M.entries);
    GammaProfile g = gammas_from(s.fixed_points(), s.p());
    OperatorRadius r = operator_radius(g, t);
    Tally tally;

    Json j;
    j["scenario"] = scenario_json(s);
    j["t"] = number(t);
    j["N"] = N;
    j["n_max"] = n_max;
    j["quadrature"] = {{"radial_nodes", M.radial_nodes},
                       {"angular_nodes", M.angular_nodes},
                       {"clip_radius", number(M.clip_radius)},
                       {"truncation_error_bound", number(M.truncation_error_bound)}};
    Json seq = Json::array(), stag = Json::array();
    for (std::size_t n = 0; n < est.sequence.size(); ++n) {
        seq.push_back(number(est.sequence[n]));
        if (est.stagnated[n]) stag.push_back(n + 1);
    }
    j["gelfand"] = {{"radius", number(est.radius)}, {"argmin", est.argmin}, {"sequence", seq}, {"stagnated", stag}};
    j["operator_radius"] = number(r.value);
    double ratio = r.value > 0 ? est.radius / r.value : std::numeric_limits<double>::infinity();
    j["ratio"] = number(ratio);
    Json checks = Json::array();
    checks.push_back(check("radius_bound", number(ratio), number(tol.radius_bound),
                           ratio <= tol.radius_bound ? "pass" : "fail", true, tally, status));
    Json bracket = check("radius_bracket", number(ratio), Json::array({0.85, 1.15}),
                         ratio >= 0.85 && ratio <= 1.15 ? "pass" : "fail", false, tally, status);
    checks.push_back(bracket);
    j["checks"] = checks;
    Json leading = Json::array();
    for (std::size_t k = 0; k < cloud.size() && k < 16; ++k) leading.push_back(complex_json(cloud[k]));
    j["eigen_cloud"] = {{"count", cloud.size()},
                        {"max_modulus", number(cloud.empty() ? 0.0 : std::abs(cloud.front()))},
                        {"leading", leading},
                        {"note", "eigenvalues of a non-normal truncation are indicative only"}};
    return j;
}

Json provenance_json(Tolerances const& tol, QuadratureGrid const& grid) {
    OrbitOptions orbit;
    Json j;
    j["tolerances"] = {{"identity", number(tol.identity)},         {"eigen_residual", number(tol.eigen_residual)},
                       {"resolvent", number(tol.resolvent)},       {"witness", number(tol.witness)},
                       {"growth", number(tol.growth)},             {"orbit", number(tol.orbit)},
                       {"growth_bound", number(tol.growth_bound)}, {"radius_bound", number(tol.radius_bound)},
                       {"alpha", number(tol.alpha)}};
    j["membership_grid"] = {{"rings", grid.rings},
                            {"radial_nodes", grid.radial_nodes},
                            {"angular_nodes_per_panel", grid.angular_nodes},
                            {"base_panels", grid.base_panels},
                            {"fit_rings", grid.fit_rings}};
    j["sample_grids"] = {{"identity", "halton 100 points, radius 0.95"},
                         {"residual", "halton 20 points, radius 0.9"},
                         {"growth_bound_radius", number(0.99)}};
    j["orbit"] = {{"step", number(orbit.step)}, {"epsilon", number(orbit.epsilon)}, {"t_max", number(orbit.t_max)}};
    return j;
}

}  // namespace bergspec
