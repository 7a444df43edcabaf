#pragma once

// Hyperbolic semiflows and semicocycles through their canonical model.
//
// A scenario carries a Koenigs map h with h(phi_t(z)) = h(z) + t and a
// coboundary v with u_t = v(phi_t) / v. Everything else (phi_t, u_t, the
// generators G = 1/h' and g = v'/(v h')) is derived from those two maps.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bergspec/expr.hpp"
#include "bergspec/types.hpp"

namespace bergspec {

enum class Role { denjoy_wolff, repelling };

char const* to_string(Role role);

/// Spectral data attached to one boundary fixed point.
struct FixedPoint {
    cplx zeta;
    double alpha = 0.0;  // > 0 at the Denjoy-Wolff point, < 0 at repelling points
    Beta beta;           // u_t(zeta) = exp(beta t)
    Role role = Role::repelling;
};

enum class ModelKind { strip_flow, half_strip, trident, expression, parametric };

char const* to_string(ModelKind kind);

/// Parameters of v = exp(c h) (h')^{-s} (z - zeta*)^d.
struct WeightParams {
    double c = 0.0;
    double s = 0.0;
    double d = 0.0;
    friend bool operator==(WeightParams const&, WeightParams const&) = default;
};

class Scenario {
public:
    static Scenario strip_flow(double a, double p = 2.0, WeightParams weights = {});
    static Scenario half_strip(double p = 2.0, WeightParams weights = {});
    static Scenario trident(double p = 2.0, WeightParams weights = {});
    static Scenario parametric(double p, std::vector<FixedPoint> fixed_points);
    /// Petal anchors pair up with repelling fixed points in declaration order.
    static Scenario expression(double p, std::string_view h_expr, std::string_view v_expr,
                               std::vector<FixedPoint> fixed_points, std::vector<cplx> petal_anchors,
                               std::vector<cplx> extra_focus = {});

    double p() const;
    ModelKind kind() const;
    std::string model_name() const { return to_string(kind()); }
    double a() const;
    WeightParams weights() const;
    bool evaluable() const { return kind() != ModelKind::parametric; }

    std::vector<FixedPoint> const& fixed_points() const;
    std::size_t denjoy_wolff_index() const;
    /// Boundary points where h or v may be singular; quadrature refines toward them.
    std::vector<cplx> const& focus_points() const;

    std::string const& h_source() const;
    std::string const& v_source() const;

    cplx h(cplx z) const;
    cplx h_prime(cplx z) const;
    Jet h_jet(cplx z) const;
    cplx v(cplx z) const;
    cplx v_prime(cplx z) const;
    Jet v_jet(cplx z) const;

    /// G = 1/h'.
    cplx generator_G(cplx z) const;
    /// G' = -h''/h'^2.
    cplx generator_G_prime(cplx z) const;
    /// g = v'/(v h').
    cplx generator_g(cplx z) const;

    /// z in the disk with h(z) = w. Throws InversionFailure or Error(outside_domain).
    cplx h_inverse(cplx w) const;
    /// phi_t(z) = h^{-1}(h(z) + t). Negative t follows the backward orbit inside a petal.
    cplx flow(double t, cplx z) const;
    /// u_t(z) = v(phi_t(z)) / v(z).
    cplx cocycle(double t, cplx z) const;

    /// Base point of the backward orbit toward the repelling point fixed_points()[index].
    cplx petal_anchor(std::size_t index) const;
    bool has_petal_anchor(std::size_t index) const;

private:
    struct Model;
    explicit Scenario(std::shared_ptr<Model const> model);
    Model const& model() const { return *model_; }
    void require_evaluable(char const* op) const;

    std::shared_ptr<Model const> model_;
};

/// Parses the line-oriented `key = value` scenario format. Throws ConfigError.
Scenario parse_scenario(std::string_view config_text);

struct AlphaEstimate {
    double declared = 0.0;
    double difference_quotient = 0.0;  // -log of the radial difference quotient of phi_1
    double generator_derivative = 0.0; // -Re G'(zeta)
    double value() const { return 0.5 * (difference_quotient + generator_derivative); }
};

/// Recovers alpha at fixed_points()[index] two ways; throws Error(model_inconsistency)
/// when either route misses the declared value by more than `tolerance`.
AlphaEstimate alpha_at(Scenario const& scenario, std::size_t index, double tolerance = 1e-4);

/// Radial boundary limit of g at fixed_points()[index]. Returns the -inf sentinel when
/// Re g runs off below -1e3; throws Error(no_boundary_limit) when the limit does not settle.
Beta beta_at(Scenario const& scenario, std::size_t index);

/// Radii 1 - 2^{-k}, k = 4..14, used for boundary limits.
std::vector<double> boundary_radii();

/// Richardson extrapolation of samples whose error halves with each step; uses the
/// last `levels` samples.
cplx richardson_halving(std::vector<cplx> const& samples, int levels = 4);

}  // namespace bergspec
