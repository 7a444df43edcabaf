#pragma once

// Region algebra for the spectra of hyperbolic weighted composition semigroups.
//
// Every result is a function of the gamma profile gamma_j = 2 alpha_j / p + Re beta_j
// alone. Generator-side sets are unions of vertical strips, half-planes and lines;
// operator-side sets are disks, annuli and circles.

#include <string>
#include <vector>

#include "bergspec/scenario.hpp"
#include "bergspec/types.hpp"

namespace bergspec {

class GammaProfile {
public:
    /// Sorts `gammas` non-increasing and pads with -inf so that gamma_1 and gamma_2 exist.
    GammaProfile(double p, ExtReal gamma0, std::vector<ExtReal> gammas);

    double p() const { return p_; }
    ExtReal gamma0() const { return gamma0_; }
    ExtReal gamma1() const { return gammas_[0]; }
    ExtReal gamma2() const { return gammas_[1]; }
    std::vector<ExtReal> const& gammas() const { return gammas_; }
    /// gamma_0 followed by the repelling values.
    std::vector<ExtReal> all() const;

    GammaProfile translated(double shift) const;

    friend bool operator==(GammaProfile const&, GammaProfile const&) = default;

private:
    double p_;
    ExtReal gamma0_;
    std::vector<ExtReal> gammas_;
};

GammaProfile gammas_from(std::vector<FixedPoint> const& fixed_points, double p);

enum class Certainty { certified, boundary_unresolved, unknown_question2 };

enum class ComponentKind {
    half_plane_left,       // Re l <= b
    vstrip,                // a <= Re l <= b
    vline,                 // Re l = c
    open_vstrip_interior,  // a < Re l < b (a may be -inf)
    disk,                  // |l| <= r
    closed_annulus,        // r1 <= |l| <= r2
    open_annulus_interior, // r1 < |l| < r2
    circle,                // |l| = r
};

char const* to_string(ComponentKind kind);
char const* to_string(Certainty certainty);

struct Component {
    ComponentKind kind;
    ExtReal lo;   // a, r1; unused for half_plane_left/disk/circle/vline
    ExtReal hi;   // b, r2, c, r
    Certainty certainty = Certainty::certified;

    bool contains(cplx lambda) const;
    friend bool operator==(Component const&, Component const&) = default;
};

Component half_plane_left(ExtReal b, Certainty c = Certainty::certified);
Component vstrip(ExtReal a, ExtReal b, Certainty c = Certainty::certified);
Component vline(ExtReal x, Certainty c = Certainty::certified);
Component open_vstrip_interior(ExtReal a, ExtReal b, Certainty c = Certainty::certified);
Component disk(double r, Certainty c = Certainty::certified);
Component closed_annulus(double r1, double r2, Certainty c = Certainty::certified);
Component open_annulus_interior(double r1, double r2, Certainty c = Certainty::certified);
Component circle(double r, Certainty c = Certainty::certified);

/// A normalized union of components. An empty component list is the empty set.
class SpectralRegion {
public:
    SpectralRegion() = default;
    explicit SpectralRegion(std::vector<Component> components);

    static SpectralRegion empty() { return {}; }

    std::vector<Component> const& components() const { return components_; }
    bool is_empty() const { return components_.empty(); }
    bool contains(cplx lambda) const;
    /// Membership restricted to components with the given certainty.
    bool contains(cplx lambda, Certainty certainty) const;
    SpectralRegion only(Certainty certainty) const;
    SpectralRegion translated(double shift) const;
    SpectralRegion united(SpectralRegion const& other) const;

    friend bool operator==(SpectralRegion const&, SpectralRegion const&) = default;

private:
    std::vector<Component> components_;
};

/// Degenerate strips become lines or half-planes, inverted ranges vanish, touching
/// closed pieces of equal certainty merge, and the order is canonical.
std::vector<Component> normalize(std::vector<Component> components);

/// Throws CoverageError when gamma_0 = -inf.
SpectralRegion generator_spectrum(GammaProfile const& g);
/// Throws CoverageError unless gamma_0 and gamma_1 are finite.
SpectralRegion essential_spectrum(GammaProfile const& g);
SpectralRegion generator_point_spectrum(GammaProfile const& g);

struct CompositionSpectra {
    SpectralRegion spectrum;
    SpectralRegion point_spectrum;
};

/// Unweighted composition semigroup: alphas[0] is the Denjoy-Wolff value.
CompositionSpectra composition_spectrum(std::vector<double> const& alphas, double p);

struct OperatorRadius {
    double value = 0.0;
    bool quasinilpotent = false;
    bool exact = true;
};

OperatorRadius operator_radius(GammaProfile const& g, double t);
/// Requires t > 0.
SpectralRegion operator_spectrum(GammaProfile const& g, double t);
SpectralRegion operator_point_spectrum(GammaProfile const& g, double t);

enum class Membership { member, non_member, unresolved };

char const* to_string(Membership m);

/// Local integrability of exp(mu h) at a fixed point: Re mu < 2 alpha / p at the
/// Denjoy-Wolff point, Re mu > 2 alpha / p at a repelling point; ties unresolved.
Membership membership_rule(cplx mu, FixedPoint const& fp, double p);

}  // namespace bergspec
