#include "bergspec/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "bergspec/error.hpp"
#include "bergspec/grid.hpp"

namespace bergspec {

char const* to_string(Role role) {
    return role == Role::denjoy_wolff ? "denjoy_wolff" : "repelling";
}

char const* to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::strip_flow: return "strip_flow";
    case ModelKind::half_strip: return "half_strip";
    case ModelKind::trident: return "trident";
    case ModelKind::expression: return "expression";
    case ModelKind::parametric: return "parametric";
    }
    return "unknown";
}

namespace {

constexpr double petal_depth = 8.0;
constexpr int newton_budget = 50;
constexpr int seed_grid_size = 64;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "(%.17g)", x);
    return buf;
}

struct SeedPoint {
    cplx z;
    cplx w;
};

}  // namespace

struct Scenario::Model {
    ModelKind kind = ModelKind::parametric;
    double p = 2.0;
    double a = 1.0;
    WeightParams weights;
    std::vector<FixedPoint> fixed_points;
    std::vector<cplx> focus;
    // One entry per fixed point; only meaningful for repelling points.
    std::vector<cplx> anchors;
    std::vector<char> anchor_present;
    AnalyticExpr h;
    AnalyticExpr v;
    std::vector<SeedPoint> seeds;
};

Scenario::Scenario(std::shared_ptr<Model const> model) : model_(std::move(model)) {}

double Scenario::p() const { return model().p; }
ModelKind Scenario::kind() const { return model().kind; }
double Scenario::a() const { return model().a; }
WeightParams Scenario::weights() const { return model().weights; }
std::vector<FixedPoint> const& Scenario::fixed_points() const { return model().fixed_points; }
std::vector<cplx> const& Scenario::focus_points() const { return model().focus; }
std::string const& Scenario::h_source() const { return model().h.source(); }
std::string const& Scenario::v_source() const { return model().v.source(); }

std::size_t Scenario::denjoy_wolff_index() const {
    auto const& fps = fixed_points();
    for (std::size_t i = 0; i < fps.size(); ++i)
        if (fps[i].role == Role::denjoy_wolff) return i;
    throw Error(ErrorKind::model_inconsistency, "scenario has no Denjoy-Wolff point");
}

void Scenario::require_evaluable(char const* op) const {
    if (!evaluable())
        throw Error(ErrorKind::precondition,
                    std::string(op) + ": parametric scenarios carry no maps to evaluate");
}

namespace {

void check_inside(cplx z) {
    if (!(std::norm(z) < 1.0))
        throw Error(ErrorKind::evaluation, "point outside the open unit disk");
}

template <class T>
T checked(T value) {
    if constexpr (std::is_same_v<T, cplx>) {
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
            throw Error(ErrorKind::evaluation, "non-finite value");
    } else {
        if (!std::isfinite(std::abs(value.value)) || !std::isfinite(std::abs(value.d1)) ||
            !std::isfinite(std::abs(value.d2)))
            throw Error(ErrorKind::evaluation, "non-finite value");
    }
    return value;
}

}  // namespace

cplx Scenario::h(cplx z) const {
    require_evaluable("h");
    check_inside(z);
    return checked(model().h(z));
}

Jet Scenario::h_jet(cplx z) const {
    require_evaluable("h'");
    check_inside(z);
    return checked(model().h.jet(z));
}

cplx Scenario::h_prime(cplx z) const { return h_jet(z).d1; }

cplx Scenario::v(cplx z) const {
    require_evaluable("v");
    check_inside(z);
    return checked(model().v(z));
}

Jet Scenario::v_jet(cplx z) const {
    require_evaluable("v'");
    check_inside(z);
    return checked(model().v.jet(z));
}

cplx Scenario::v_prime(cplx z) const { return v_jet(z).d1; }

cplx Scenario::generator_G(cplx z) const { return 1.0 / h_prime(z); }

cplx Scenario::generator_G_prime(cplx z) const {
    Jet hj = h_jet(z);
    return -hj.d2 / (hj.d1 * hj.d1);
}

cplx Scenario::generator_g(cplx z) const {
    Jet vj = v_jet(z);
    if (vj.value == 0.0) throw Error(ErrorKind::evaluation, "v vanishes (or underflows) at the evaluation point");
    return checked(vj.d1 / (vj.value * h_prime(z)));
}

// ---------------------------------------------------------------------------
// Inversion

namespace {

/// Residual floor from representing z in double precision near the boundary.
double residual_floor(cplx w, cplx z, cplx hprime) {
    double eps = std::numeric_limits<double>::epsilon();
    return std::max(1e-12 * (1.0 + std::abs(w)), 64.0 * eps * std::abs(hprime) * std::max(1.0, std::abs(z)));
}

enum class NewtonOutcome { converged, boundary, stalled };

struct NewtonResult {
    cplx z;
    double residual;
    NewtonOutcome outcome;
};

NewtonResult newton(AnalyticExpr const& h, cplx w, cplx z, int budget) {
    NewtonResult best{z, std::numeric_limits<double>::infinity(), NewtonOutcome::stalled};
    for (int it = 0; it <= budget; ++it) {
        Jet hj = h.jet(z);
        cplx r = hj.value - w;
        double res = std::abs(r);
        if (!std::isfinite(res)) break;
        if (res < best.residual) best = {z, res, NewtonOutcome::stalled};
        if (res <= 0.25 * residual_floor(w, z, hj.d1)) {
            best.outcome = NewtonOutcome::converged;
            return best;
        }
        if (it == budget) break;
        cplx step = r / hj.d1;
        double damping = 1.0;
        cplx next = z - step;
        int halvings = 0;
        while (!(std::norm(next) < 1.0) && halvings < 60) {
            damping *= 0.5;
            next = z - damping * step;
            ++halvings;
        }
        if (!(std::norm(next) < 1.0)) {
            best.outcome = NewtonOutcome::boundary;
            return best;
        }
        if (next == z) break;
        z = next;
    }
    if (best.residual <= residual_floor(w, best.z, h.jet(best.z).d1)) best.outcome = NewtonOutcome::converged;
    // Iterates pinned against the circle mean the target lies outside the image.
    else if (1.0 - std::abs(best.z) < 1e-9) best.outcome = NewtonOutcome::boundary;
    return best;
}

std::vector<SeedPoint> build_seed_grid(AnalyticExpr const& h) {
    std::vector<SeedPoint> seeds;
    seeds.reserve(seed_grid_size * seed_grid_size + 1);
    seeds.push_back({0.0, h(0.0)});
    for (int i = 0; i < seed_grid_size; ++i) {
        double r = 1.0 - std::pow(2.0, -0.25 * (i + 1));
        for (int j = 0; j < seed_grid_size; ++j) {
            cplx z = std::polar(r, 2.0 * pi * (j + 0.5) / seed_grid_size);
            cplx w = h(z);
            if (std::isfinite(w.real()) && std::isfinite(w.imag())) seeds.push_back({z, w});
        }
    }
    return seeds;
}

cplx strip_flow_inverse(double a, cplx w) {
    if (!(std::abs(w.imag()) < pi / (2.0 * a)))
        throw Error(ErrorKind::outside_domain, "w outside the strip |Im w| < pi/(2a)");
    return std::tanh(0.5 * a * w);
}

cplx half_strip_inverse(cplx w) {
    double shift = std::asinh(1.0);
    if (!(w.real() + shift > 0.0 && std::abs(w.imag()) < pi / 2))
        throw Error(ErrorKind::outside_domain, "w outside the half-strip");
    cplx q = std::sinh(w + shift);
    return (1.0 - q) / (1.0 + q);
}

cplx trident_inverse(cplx w) {
    if (!(std::abs(w.imag()) < pi / 2) || (w.imag() == 0.0 && w.real() <= -0.5 * std::log(2.0)))
        throw Error(ErrorKind::outside_domain, "w outside the slit strip");
    // exp(2h) = (1 + z^2)/(1 + z)^2  <=>  z^2 - 2 q z + 1 = 0 with q = E/(1 - E).
    cplx e = std::exp(2.0 * w);
    cplx q = e / (1.0 - e);
    cplx root = std::sqrt(q * q - 1.0);
    if ((std::conj(q) * root).real() < 0.0) root = -root;
    cplx big = q + root;  // the roots are big and 1/big
    return 1.0 / big;
}

}  // namespace

cplx Scenario::h_inverse(cplx w) const {
    require_evaluable("h_inverse");
    Model const& m = model();
    cplx z;
    switch (m.kind) {
    case ModelKind::strip_flow: z = strip_flow_inverse(m.a, w); break;
    case ModelKind::half_strip: z = half_strip_inverse(w); break;
    case ModelKind::trident: z = trident_inverse(w); break;
    default: {
        auto nearest = std::min_element(m.seeds.begin(), m.seeds.end(), [&](auto const& x, auto const& y) {
            return std::norm(x.w - w) < std::norm(y.w - w);
        });
        NewtonResult r = newton(m.h, w, nearest->z, newton_budget);
        if (r.outcome == NewtonOutcome::converged) return r.z;
        // Continuation from the seed's image toward w.
        constexpr int pieces = 16;
        cplx zc = nearest->z;
        double best = r.residual;
        cplx best_z = r.z;
        for (int k = 1; k <= pieces; ++k) {
            cplx target = nearest->w + (w - nearest->w) * (double(k) / pieces);
            NewtonResult step = newton(m.h, target, zc, newton_budget);
            if (step.outcome == NewtonOutcome::boundary)
                throw Error(ErrorKind::outside_domain, "Newton iterates reached the unit circle; w is outside h(D)");
            if (step.outcome != NewtonOutcome::converged) {
                if (step.residual < best) {
                    best = step.residual;
                    best_z = step.z;
                }
                throw InversionFailure("h inverse did not converge", best);
            }
            zc = step.z;
        }
        return zc;
    }
    }
    if (!(std::norm(z) < 1.0)) throw Error(ErrorKind::outside_domain, "closed-form inverse left the disk");
    // Polish the closed form.
    NewtonResult r = newton(m.h, w, z, 3);
    if (r.outcome == NewtonOutcome::boundary)
        throw Error(ErrorKind::outside_domain, "inverse on the unit circle");
    if (r.outcome != NewtonOutcome::converged)
        throw InversionFailure("closed-form inverse failed the residual check", r.residual);
    return r.z;
}

cplx Scenario::flow(double t, cplx z) const {
    require_evaluable("flow");
    check_inside(z);
    if (t == 0.0) return z;
    cplx w = h(z) + t;
    if (t > 0.0) return h_inverse(w);
    try {
        return h_inverse(w);
    } catch (Error const& e) {
        if (e.kind() == ErrorKind::outside_domain) throw Error(ErrorKind::petal_exit, "backward orbit left h(D)");
        throw;
    }
}

cplx Scenario::cocycle(double t, cplx z) const {
    if (t == 0.0) {
        check_inside(z);
        return 1.0;
    }
    return v(flow(t, z)) / v(z);
}

bool Scenario::has_petal_anchor(std::size_t index) const {
    return index < model().anchor_present.size() && model().anchor_present[index];
}

cplx Scenario::petal_anchor(std::size_t index) const {
    if (index >= fixed_points().size() || fixed_points()[index].role != Role::repelling)
        throw Error(ErrorKind::precondition, "petal anchors exist only for repelling fixed points");
    if (!has_petal_anchor(index))
        throw Error(ErrorKind::precondition, "no petal anchor declared for this repelling fixed point");
    return model().anchors[index];
}

// ---------------------------------------------------------------------------
// Construction

namespace {

void validate_fixed_points(std::vector<FixedPoint> const& fps) {
    int dw = 0;
    for (auto const& fp : fps) {
        if (std::abs(std::abs(fp.zeta) - 1.0) > 1e-12)
            throw ConfigError("fixed point must lie on the unit circle");
        if (fp.role == Role::denjoy_wolff) {
            ++dw;
            if (!(fp.alpha > 0.0)) throw ConfigError("Denjoy-Wolff point requires alpha > 0");
        } else if (!(fp.alpha < 0.0)) {
            throw ConfigError("repelling fixed point requires alpha < 0");
        }
    }
    if (dw != 1) throw ConfigError("exactly one Denjoy-Wolff fixed point required, found " + std::to_string(dw));
}

void validate_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("p must be a finite number >= 1");
}

std::string product(std::vector<std::string> const& factors) {
    if (factors.empty()) return "1";
    std::string s = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) s += "*" + factors[i];
    return s;
}

}  // namespace

Scenario Scenario::strip_flow(double a, double p, WeightParams w) {
    validate_p(p);
    if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("strip_flow requires a > 0");
    auto m = std::make_shared<Model>();
    m->kind = ModelKind::strip_flow;
    m->p = p;
    m->a = a;
    m->weights = w;
    std::string h = "log((1+z)/(1-z))/" + num(a);
    m->h = AnalyticExpr::parse(h);
    std::vector<std::string> v;
    if (w.c != 0.0) v.push_back("exp(" + num(w.c) + "*(" + h + "))");
    if (w.s != 0.0) v.push_back("pow(" + num(a) + "*(1-z)*(1+z)/2," + num(w.s) + ")");
    if (w.d != 0.0) v.push_back("pow(1+z," + num(w.d) + ")");
    m->v = AnalyticExpr::parse(product(v));
    m->fixed_points = {
        {1.0, a, Beta{w.c - w.s * a}, Role::denjoy_wolff},
        {-1.0, -a, Beta{w.c + w.s * a + w.d * a}, Role::repelling},
    };
    m->focus = {1.0, -1.0};
    Scenario partial(m);
    m->anchors = {0.0, partial.h_inverse(cplx(-petal_depth, 0.0))};
    m->anchor_present = {0, 1};
    return Scenario(m);
}

Scenario Scenario::half_strip(double p, WeightParams w) {
    validate_p(p);
    auto m = std::make_shared<Model>();
    m->kind = ModelKind::half_strip;
    m->p = p;
    m->weights = w;
    std::string q = "((1-z)/(1+z))";
    std::string h = "log(" + q + "+sqrt(1+" + q + "^2))-log(1+sqrt(2))";
    m->h = AnalyticExpr::parse(h);
    std::vector<std::string> v;
    if (w.c != 0.0) v.push_back("exp(" + num(w.c) + "*(" + h + "))");
    if (w.s != 0.0) v.push_back("exp(" + num(w.s) + "*(2*log(1+z)+0.5*log(1+" + q + "^2)))");
    // No repelling point to carry a (z - zeta)^d factor; d is ignored here.
    m->v = AnalyticExpr::parse(product(v));
    m->fixed_points = {{-1.0, 1.0, Beta{w.c - w.s}, Role::denjoy_wolff}};
    m->focus = {-1.0, cplx(0, 1), cplx(0, -1)};
    m->anchors = {0.0};
    m->anchor_present = {0};
    return Scenario(m);
}

Scenario Scenario::trident(double p, WeightParams w) {
    validate_p(p);
    auto m = std::make_shared<Model>();
    m->kind = ModelKind::trident;
    m->p = p;
    m->weights = w;
    std::string h = "0.5*log((z-i)*(z+i))-log(1+z)";
    m->h = AnalyticExpr::parse(h);
    std::vector<std::string> v;
    if (w.c != 0.0) v.push_back("exp(" + num(w.c) + "*(" + h + "))");
    if (w.s != 0.0) v.push_back("exp(" + num(w.s) + "*(log((z-i)*(z+i))+log(1+z)-log(1-z)))");
    if (w.d != 0.0) v.push_back("pow(z-i," + num(w.d) + ")");
    m->v = AnalyticExpr::parse(product(v));
    cplx i(0.0, 1.0);
    m->fixed_points = {
        {-1.0, 1.0, Beta{w.c - w.s}, Role::denjoy_wolff},
        {i, -2.0, Beta{w.c + 2.0 * w.s + 2.0 * w.d}, Role::repelling},
        {-i, -2.0, Beta{w.c + 2.0 * w.s}, Role::repelling},
    };
    m->focus = {-1.0, i, -i, 1.0};
    Scenario partial(m);
    // The petal at i maps onto the strip -pi/2 < Im w < 0, the one at -i onto 0 < Im w < pi/2.
    m->anchors = {0.0, partial.h_inverse(cplx(-petal_depth, -pi / 4)), partial.h_inverse(cplx(-petal_depth, pi / 4))};
    m->anchor_present = {0, 1, 1};
    return Scenario(m);
}

Scenario Scenario::parametric(double p, std::vector<FixedPoint> fps) {
    validate_p(p);
    validate_fixed_points(fps);
    auto m = std::make_shared<Model>();
    m->kind = ModelKind::parametric;
    m->p = p;
    m->fixed_points = std::move(fps);
    m->anchors.assign(m->fixed_points.size(), 0.0);
    m->anchor_present.assign(m->fixed_points.size(), 0);
    return Scenario(m);
}

Scenario Scenario::expression(double p, std::string_view h_expr, std::string_view v_expr,
                              std::vector<FixedPoint> fps, std::vector<cplx> petal_anchors,
                              std::vector<cplx> extra_focus) {
    validate_p(p);
    validate_fixed_points(fps);
    auto m = std::make_shared<Model>();
    m->kind = ModelKind::expression;
    m->p = p;
    m->h = AnalyticExpr::parse(h_expr);
    m->v = AnalyticExpr::parse(v_expr.empty() ? std::string_view("1") : v_expr);
    m->fixed_points = std::move(fps);
    for (auto const& fp : m->fixed_points) m->focus.push_back(fp.zeta);
    for (cplx f : extra_focus) {
        if (std::abs(std::abs(f) - 1.0) > 1e-12) throw ConfigError("focus points must lie on the unit circle");
        m->focus.push_back(f);
    }
    m->anchors.assign(m->fixed_points.size(), 0.0);
    m->anchor_present.assign(m->fixed_points.size(), 0);
    std::size_t next = 0;
    for (std::size_t i = 0; i < m->fixed_points.size() && next < petal_anchors.size(); ++i) {
        if (m->fixed_points[i].role != Role::repelling) continue;
        cplx anchor = petal_anchors[next++];
        if (!(std::norm(anchor) < 1.0)) throw ConfigError("petal anchor must lie inside the unit disk");
        m->anchors[i] = anchor;
        m->anchor_present[i] = 1;
    }
    if (next < petal_anchors.size()) throw ConfigError("more petal anchors than repelling fixed points");
    m->seeds = build_seed_grid(m->h);
    if (m->seeds.empty()) throw ConfigError("h_expr is not finite anywhere on the seed grid");

    Scenario scenario(m);
    // Round-trip smoke test; branch correctness of user expressions is the user's business.
    for (cplx z : halton_disk(200, 0.9)) {
        cplx w, back;
        try {
            w = scenario.h(z);
            back = scenario.h(scenario.h_inverse(w));
        } catch (Error const& e) {
            throw ConfigError(std::string("round-trip smoke test failed: ") + e.what());
        }
        if (std::abs(back - w) > 1e-9 * (1.0 + std::abs(w)))
            throw ConfigError("round-trip smoke test failed: h(h^{-1}(w)) != w; check branch cuts in h_expr");
        (void)scenario.v(z);
    }
    return scenario;
}

// ---------------------------------------------------------------------------
// Boundary limits

std::vector<double> boundary_radii() {
    std::vector<double> radii;
    for (int k = 4; k <= 14; ++k) radii.push_back(1.0 - std::ldexp(1.0, -k));
    return radii;
}

cplx richardson_halving(std::vector<cplx> const& samples, int levels) {
    if (int(samples.size()) < levels) throw std::invalid_argument("richardson_halving: too few samples");
    std::vector<cplx> col(samples.end() - levels, samples.end());
    for (int m = 1; m < levels; ++m) {
        double f = std::ldexp(1.0, m) - 1.0;
        for (int k = levels - 1; k >= m; --k) col[k] = col[k] + (col[k] - col[k - 1]) / f;
    }
    return col.back();
}

AlphaEstimate alpha_at(Scenario const& s, std::size_t index, double tolerance) {
    FixedPoint const& fp = s.fixed_points().at(index);
    std::vector<cplx> quotient, derivative;
    for (double r : boundary_radii()) {
        cplx z = r * fp.zeta;
        cplx ratio = (fp.zeta - s.flow(1.0, z)) / (fp.zeta - z);
        quotient.push_back(-std::log(ratio));
        derivative.push_back(-s.generator_G_prime(z));
    }
    AlphaEstimate est;
    est.declared = fp.alpha;
    est.difference_quotient = richardson_halving(quotient).real();
    est.generator_derivative = richardson_halving(derivative).real();
    if (std::abs(est.difference_quotient - fp.alpha) > tolerance ||
        std::abs(est.generator_derivative - fp.alpha) > tolerance) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "alpha at fixed point %zu: declared %.8g, difference quotient %.8g, G' route %.8g",
                      index, fp.alpha, est.difference_quotient, est.generator_derivative);
        throw Error(ErrorKind::model_inconsistency, buf);
    }
    return est;
}

Beta beta_at(Scenario const& s, std::size_t index) {
    FixedPoint const& fp = s.fixed_points().at(index);
    std::vector<cplx> samples;
    bool cut_short = false;
    for (double r : boundary_radii()) {
        try {
            samples.push_back(s.generator_g(r * fp.zeta));
        } catch (Error const& e) {
            if (e.kind() != ErrorKind::evaluation) throw;
            cut_short = true;
            break;
        }
    }
    if (samples.size() < 5)
        throw Error(ErrorKind::no_boundary_limit, "g cannot be evaluated near fixed point " + std::to_string(index));

    // -inf: Re g below -1e3 and still falling geometrically.
    std::size_t n = samples.size();
    bool diving = samples[n - 1].real() < -1e3;
    for (std::size_t k = n - 4; k + 1 < n && diving; ++k)
        diving = samples[k + 1].real() < 1.5 * samples[k].real();
    if (diving) return Beta::minus_infinity();
    if (cut_short)
        throw Error(ErrorKind::no_boundary_limit,
                    "g stops being evaluable before the boundary at fixed point " + std::to_string(index));

    cplx last = richardson_halving(samples);
    std::vector<cplx> earlier(samples.begin(), samples.end() - 1);
    cplx prev = richardson_halving(earlier);
    if (std::abs(last - prev) > 1e-4 * (1.0 + std::abs(last)))
        throw Error(ErrorKind::no_boundary_limit, "g has no settled radial limit at fixed point " + std::to_string(index));
    return Beta{last};
}

}  // namespace bergspec
