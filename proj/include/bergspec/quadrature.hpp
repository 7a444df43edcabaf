#pragma once

#include <cmath>
#include <vector>

#include "bergspec/types.hpp"

namespace bergspec {

/// Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
public:
    explicit GaussLegendre(int n);

    int size() const { return int(nodes_.size()); }
    std::vector<double> const& nodes() const { return nodes_; }
    std::vector<double> const& weights() const { return weights_; }

    /// Nodes and weights mapped to [a, b].
    void map(double a, double b, std::vector<double>& x, std::vector<double>& w) const;

    template <class F>
    auto integrate(F&& f, double a, double b) const {
        double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        decltype(f(mid)) sum{};
        for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
        return sum * half;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Shared 16-point rule.
GaussLegendre const& gauss_legendre16();

/// Adaptive bisection with a 16-point Gauss-Legendre rule on each piece. Stops when the
/// whole-vs-halves difference drops below `abs_tol` (halved per level) or below roundoff.
template <class F>
cplx integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 60) {
    GaussLegendre const& rule = gauss_legendre16();
    struct Local {
        static cplx run(F& f, GaussLegendre const& rule, double a, double b, cplx whole, double tol, int depth) {
            double m = 0.5 * (a + b);
            cplx left = rule.integrate(f, a, m);
            cplx right = rule.integrate(f, m, b);
            cplx halves = left + right;
            double diff = std::abs(halves - whole);
            if (diff <= tol || diff <= 1e-15 * std::abs(halves) || depth <= 0 || m == a || m == b) return halves;
            return run(f, rule, a, m, left, 0.5 * tol, depth - 1) + run(f, rule, m, b, right, 0.5 * tol, depth - 1);
        }
    };
    cplx whole = rule.integrate(f, a, b);
    return Local::run(f, rule, a, b, whole, abs_tol, max_depth);
}

}  // namespace bergspec
