#include "bergspec/quadrature.hpp"

#include <stdexcept>

namespace bergspec {

GaussLegendre::GaussLegendre(int n) {
    if (n < 1) throw std::invalid_argument("GaussLegendre: n must be positive");
    nodes_.resize(n);
    weights_.resize(n);
    for (int k = 0; k < (n + 1) / 2; ++k) {
        // Tricomi's initial guess, then Newton on P_n.
        double x = std::cos(pi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double pj = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = pj;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes_[k] = -x;
        nodes_[n - 1 - k] = x;
        weights_[k] = weights_[n - 1 - k] = w;
    }
    if (n % 2 == 1) nodes_[n / 2] = 0.0;
}

void GaussLegendre::map(double a, double b, std::vector<double>& x, std::vector<double>& w) const {
    double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    x.resize(nodes_.size());
    w.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        x[i] = mid + half * nodes_[i];
        w[i] = half * weights_[i];
    }
}

GaussLegendre const& gauss_legendre16() {
    static GaussLegendre const rule(16);
    return rule;
}

}  // namespace bergspec
