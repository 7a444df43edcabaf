#pragma once

// Galerkin truncations of u_t C_{phi_t} on A^2 in the orthonormal monomial basis
// e_k = sqrt((k+1)/pi) z^k. These matrices are non-normal: their eigenvalues are an
// indication of the operator spectrum, not an approximation of it.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bergspec/scenario.hpp"

namespace bergspec {

struct TruncationMatrix {
    int N = 0;
    double t = 0.0;
    std::string scenario;
    Eigen::MatrixXcd entries;
    int radial_nodes = 0;
    int angular_nodes = 0;
    double clip_radius = 1.0;          // < 1 when evaluation near the circle failed
    double truncation_error_bound = 0; // estimate for the part of the disk dropped by clipping
};

struct TruncationOptions {
    int angular_nodes = 1024;
    int extra_radial_nodes = 8;  // Gauss-Legendre nodes on [0, 1] = N + extra
    double clip_radius = 0.999;
};

/// Entry (j, k) is the j-th Taylor coefficient of u_t phi_t^k scaled by sqrt((k+1)/(j+1)),
/// obtained from the A^2 inner product by radial Gauss-Legendre times an angular FFT.
TruncationMatrix build_matrix(Scenario const& s, double t, int N, TruncationOptions const& options = {});

struct GelfandEstimate {
    double radius = 0.0;                // min over n of ||M^n||^{1/n}
    int argmin = 0;
    std::vector<double> sequence;       // ||M^n||^{1/n}, n = 1..n_max
    std::vector<bool> stagnated;        // power iteration ran out of iterations
};

/// Operator 2-norm by power iteration on A* A (50 iterations or 1e-10 relative change).
double operator_norm(Eigen::MatrixXcd const& A, bool* stagnated = nullptr);

GelfandEstimate gelfand_radius(Eigen::MatrixXcd const& M, int n_max);

/// Dense eigenvalues sorted by modulus, largest first (ties by argument).
std::vector<cplx> eigen_cloud(Eigen::MatrixXcd const& M);

}  // namespace bergspec
