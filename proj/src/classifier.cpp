#include "bergspec/classifier.hpp"

#include <algorithm>
#include <tuple>

#include "bergspec/error.hpp"

namespace bergspec {

char const* to_string(ComponentKind kind) {
    switch (kind) {
    case ComponentKind::half_plane_left: return "HalfPlaneLeft";
    case ComponentKind::vstrip: return "VStrip";
    case ComponentKind::vline: return "VLine";
    case ComponentKind::open_vstrip_interior: return "OpenVStripInterior";
    case ComponentKind::disk: return "Disk";
    case ComponentKind::closed_annulus: return "ClosedAnnulus";
    case ComponentKind::open_annulus_interior: return "OpenAnnulusInterior";
    case ComponentKind::circle: return "Circle";
    }
    return "?";
}

char const* to_string(Certainty certainty) {
    switch (certainty) {
    case Certainty::certified: return "certified";
    case Certainty::boundary_unresolved: return "boundary_unresolved";
    case Certainty::unknown_question2: return "unknown_question2";
    }
    return "?";
}

char const* to_string(Membership m) {
    switch (m) {
    case Membership::member: return "member";
    case Membership::non_member: return "non_member";
    case Membership::unresolved: return "unresolved";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// GammaProfile

GammaProfile::GammaProfile(double p, ExtReal gamma0, std::vector<ExtReal> gammas)
    : p_(p), gamma0_(gamma0), gammas_(std::move(gammas)) {
    if (!(p >= 1.0)) throw Error(ErrorKind::precondition, "gamma profile requires p >= 1");
    std::sort(gammas_.begin(), gammas_.end(), [](ExtReal a, ExtReal b) { return a > b; });
    while (gammas_.size() < 2) gammas_.push_back(ExtReal::neg_inf());
}

std::vector<ExtReal> GammaProfile::all() const {
    std::vector<ExtReal> out{gamma0_};
    out.insert(out.end(), gammas_.begin(), gammas_.end());
    return out;
}

GammaProfile GammaProfile::translated(double shift) const {
    std::vector<ExtReal> moved;
    for (ExtReal g : gammas_) moved.push_back(g + shift);
    return GammaProfile(p_, gamma0_ + shift, moved);
}

GammaProfile gammas_from(std::vector<FixedPoint> const& fixed_points, double p) {
    ExtReal g0 = ExtReal::neg_inf();
    bool have_dw = false;
    std::vector<ExtReal> rest;
    for (auto const& fp : fixed_points) {
        ExtReal gamma = fp.beta.real() + 2.0 * fp.alpha / p;
        if (fp.role == Role::denjoy_wolff) {
            if (have_dw) throw Error(ErrorKind::precondition, "more than one Denjoy-Wolff point");
            have_dw = true;
            g0 = gamma;
        } else {
            rest.push_back(gamma);
        }
    }
    if (!have_dw) throw Error(ErrorKind::precondition, "no Denjoy-Wolff point");
    return GammaProfile(p, g0, rest);
}

// ---------------------------------------------------------------------------
// Components

Component half_plane_left(ExtReal b, Certainty c) { return {ComponentKind::half_plane_left, ExtReal::neg_inf(), b, c}; }
Component vstrip(ExtReal a, ExtReal b, Certainty c) { return {ComponentKind::vstrip, a, b, c}; }
Component vline(ExtReal x, Certainty c) { return {ComponentKind::vline, x, x, c}; }
Component open_vstrip_interior(ExtReal a, ExtReal b, Certainty c) { return {ComponentKind::open_vstrip_interior, a, b, c}; }
Component disk(double r, Certainty c) { return {ComponentKind::disk, 0.0, r, c}; }
Component closed_annulus(double r1, double r2, Certainty c) { return {ComponentKind::closed_annulus, r1, r2, c}; }
Component open_annulus_interior(double r1, double r2, Certainty c) { return {ComponentKind::open_annulus_interior, r1, r2, c}; }
Component circle(double r, Certainty c) { return {ComponentKind::circle, r, r, c}; }

bool Component::contains(cplx lambda) const {
    double x = lambda.real();
    double m = std::abs(lambda);
    switch (kind) {
    case ComponentKind::half_plane_left: return x <= hi.value();
    case ComponentKind::vstrip: return lo.value() <= x && x <= hi.value();
    case ComponentKind::vline: return x == hi.value();
    case ComponentKind::open_vstrip_interior: return lo.value() < x && x < hi.value();
    case ComponentKind::disk: return m <= hi.value();
    case ComponentKind::closed_annulus: return lo.value() <= m && m <= hi.value();
    case ComponentKind::open_annulus_interior: return lo.value() < m && m < hi.value();
    case ComponentKind::circle: return m == hi.value();
    }
    return false;
}

namespace {

enum class Axis { real_part, modulus };

struct Interval {
    Axis axis;
    bool closed;
    Certainty certainty;
    double lo;
    double hi;
};

bool is_radial(ComponentKind k) {
    return k == ComponentKind::disk || k == ComponentKind::closed_annulus ||
           k == ComponentKind::open_annulus_interior || k == ComponentKind::circle;
}

bool is_open(ComponentKind k) {
    return k == ComponentKind::open_vstrip_interior || k == ComponentKind::open_annulus_interior;
}

Component from_interval(Interval const& iv) {
    if (iv.axis == Axis::real_part) {
        if (!iv.closed) return open_vstrip_interior(iv.lo, iv.hi, iv.certainty);
        if (std::isinf(iv.lo)) return half_plane_left(iv.hi, iv.certainty);
        if (iv.lo == iv.hi) return vline(iv.hi, iv.certainty);
        return vstrip(iv.lo, iv.hi, iv.certainty);
    }
    if (!iv.closed) return open_annulus_interior(iv.lo, iv.hi, iv.certainty);
    if (iv.lo == 0.0) return disk(iv.hi, iv.certainty);
    if (iv.lo == iv.hi) return circle(iv.hi, iv.certainty);
    return closed_annulus(iv.lo, iv.hi, iv.certainty);
}

}  // namespace

std::vector<Component> normalize(std::vector<Component> components) {
    std::vector<Interval> intervals;
    for (Component const& c : components) {
        Axis axis = is_radial(c.kind) ? Axis::modulus : Axis::real_part;
        double lo = c.lo.value(), hi = c.hi.value();
        switch (c.kind) {
        case ComponentKind::half_plane_left: lo = neg_infinity; break;
        case ComponentKind::vline: lo = hi; break;
        case ComponentKind::disk: lo = 0.0; break;
        case ComponentKind::circle: lo = hi; break;
        default: break;
        }
        if (axis == Axis::modulus) {
            lo = std::max(lo, 0.0);
            // Radius 0 only arises as exp(-inf t); it carries no points of interest.
            if (!(hi > 0.0)) continue;
        }
        if (std::isinf(hi)) continue;  // hi = -inf: empty
        if (is_open(c.kind)) {
            if (!(lo < hi)) continue;
        } else if (!(lo <= hi)) {
            continue;
        }
        intervals.push_back({axis, !is_open(c.kind), c.certainty, lo, hi});
    }
    std::sort(intervals.begin(), intervals.end(), [](Interval const& x, Interval const& y) {
        return std::tie(x.certainty, x.axis, x.closed, x.lo, x.hi) < std::tie(y.certainty, y.axis, y.closed, y.lo, y.hi);
    });
    std::vector<Interval> merged;
    for (Interval const& iv : intervals) {
        if (!merged.empty()) {
            Interval& last = merged.back();
            bool same_group = last.certainty == iv.certainty && last.axis == iv.axis && last.closed == iv.closed;
            bool joins = iv.closed ? iv.lo <= last.hi : iv.lo < last.hi;
            if (same_group && joins) {
                last.hi = std::max(last.hi, iv.hi);
                continue;
            }
        }
        merged.push_back(iv);
    }
    std::vector<Component> out;
    for (Interval const& iv : merged) out.push_back(from_interval(iv));
    return out;
}

SpectralRegion::SpectralRegion(std::vector<Component> components) : components_(normalize(std::move(components))) {}

bool SpectralRegion::contains(cplx lambda) const {
    return std::any_of(components_.begin(), components_.end(), [&](Component const& c) { return c.contains(lambda); });
}

bool SpectralRegion::contains(cplx lambda, Certainty certainty) const {
    return std::any_of(components_.begin(), components_.end(),
                       [&](Component const& c) { return c.certainty == certainty && c.contains(lambda); });
}

SpectralRegion SpectralRegion::only(Certainty certainty) const {
    std::vector<Component> kept;
    for (auto const& c : components_)
        if (c.certainty == certainty) kept.push_back(c);
    return SpectralRegion(kept);
}

SpectralRegion SpectralRegion::translated(double shift) const {
    std::vector<Component> moved;
    for (Component c : components_) {
        if (is_radial(c.kind)) throw std::logic_error("translation applies to generator-side regions only");
        c.lo = c.lo + shift;
        c.hi = c.hi + shift;
        moved.push_back(c);
    }
    return SpectralRegion(moved);
}

SpectralRegion SpectralRegion::united(SpectralRegion const& other) const {
    std::vector<Component> all = components_;
    all.insert(all.end(), other.components_.begin(), other.components_.end());
    return SpectralRegion(all);
}

// ---------------------------------------------------------------------------
// Classifiers

SpectralRegion generator_spectrum(GammaProfile const& g) {
    ExtReal g0 = g.gamma0(), g1 = g.gamma1(), g2 = g.gamma2();
    if (g0.is_neg_inf())
        throw CoverageError("generator_spectrum", "gamma_0 = -inf: the spectrum theorem does not determine sigma(A)");
    if (g0 >= g1) return SpectralRegion({vstrip(ExtReal::neg_inf(), g2), vstrip(g1, g0)});
    if (g2 < g0) return SpectralRegion({vstrip(ExtReal::neg_inf(), g2), vstrip(g0, g1)});
    return SpectralRegion({vstrip(ExtReal::neg_inf(), g1)});
}

SpectralRegion essential_spectrum(GammaProfile const& g) {
    if (g.gamma0().is_neg_inf() || g.gamma1().is_neg_inf())
        throw CoverageError("essential_spectrum", "essential spectrum requires gamma_0 and gamma_1 finite");
    std::vector<Component> lines;
    for (ExtReal x : g.all())
        if (x.is_finite()) lines.push_back(vline(x));
    return SpectralRegion(lines);
}

SpectralRegion generator_point_spectrum(GammaProfile const& g) {
    ExtReal g0 = g.gamma0(), g1 = g.gamma1();
    if (g1 < g0)
        return SpectralRegion({open_vstrip_interior(g1, g0), vline(g1, Certainty::boundary_unresolved),
                               vline(g0, Certainty::boundary_unresolved)});
    if (g1 > g0) return SpectralRegion::empty();
    return SpectralRegion({vline(g0, Certainty::boundary_unresolved)});
}

CompositionSpectra composition_spectrum(std::vector<double> const& alphas, double p) {
    if (alphas.empty() || !(alphas[0] > 0.0))
        throw Error(ErrorKind::precondition, "composition_spectrum: alpha_0 must be positive");
    std::vector<FixedPoint> fps;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        if (j > 0 && !(alphas[j] < 0.0))
            throw Error(ErrorKind::precondition, "composition_spectrum: repelling alphas must be negative");
        fps.push_back({std::polar(1.0, 2.0 * pi * double(j) / double(alphas.size())), alphas[j], Beta{},
                       j == 0 ? Role::denjoy_wolff : Role::repelling});
    }
    GammaProfile g = gammas_from(fps, p);
    return {generator_spectrum(g), generator_point_spectrum(g)};
}

OperatorRadius operator_radius(GammaProfile const& g, double t) {
    if (!(t >= 0.0)) throw Error(ErrorKind::precondition, "operator_radius requires t >= 0");
    if (t == 0.0) return {1.0, false, true};
    double r = 0.0;
    for (ExtReal x : g.all()) r = std::max(r, exp_scaled(x, t));
    return {r, r == 0.0, true};
}

SpectralRegion operator_spectrum(GammaProfile const& g, double t) {
    if (!(t > 0.0)) throw Error(ErrorKind::precondition, "operator_spectrum requires t > 0");
    ExtReal g0 = g.gamma0(), g1 = g.gamma1(), g2 = g.gamma2();
    if (g0.is_neg_inf())
        throw CoverageError("operator_spectrum", "gamma_0 = -inf: the spectrum theorem does not determine sigma(A)");
    if (g2 >= g0 || g2 == g1) return SpectralRegion({disk(operator_radius(g, t).value)});
    double e0 = exp_scaled(g0, t), e1 = exp_scaled(g1, t), e2 = exp_scaled(g2, t);
    double lo = std::min(e0, e1), hi = std::max(e0, e1);
    return SpectralRegion({disk(e2), closed_annulus(lo, hi),
                           open_annulus_interior(e2, lo, Certainty::unknown_question2)});
}

SpectralRegion operator_point_spectrum(GammaProfile const& g, double t) {
    if (!(t >= 0.0)) throw Error(ErrorKind::precondition, "operator_point_spectrum requires t >= 0");
    if (t == 0.0) return SpectralRegion({circle(1.0, Certainty::boundary_unresolved)});
    ExtReal g0 = g.gamma0(), g1 = g.gamma1();
    double e0 = exp_scaled(g0, t), e1 = exp_scaled(g1, t);
    if (g1 < g0)
        return SpectralRegion({open_annulus_interior(e1, e0), circle(e1, Certainty::boundary_unresolved),
                               circle(e0, Certainty::boundary_unresolved)});
    if (g1 > g0) return SpectralRegion::empty();
    return SpectralRegion({circle(e0, Certainty::boundary_unresolved)});
}

Membership membership_rule(cplx mu, FixedPoint const& fp, double p) {
    double threshold = 2.0 * fp.alpha / p;
    double x = mu.real();
    if (x == threshold) return Membership::unresolved;
    bool inside = fp.role == Role::denjoy_wolff ? x < threshold : x > threshold;
    return inside ? Membership::member : Membership::non_member;
}

}  // namespace bergspec
