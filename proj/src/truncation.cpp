#include "bergspec/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fftw3.h>

#include "bergspec/error.hpp"
#include "bergspec/quadrature.hpp"

namespace bergspec {

namespace {

struct FftwPlan {
    explicit FftwPlan(int n) : n(n) {
        in = fftw_alloc_complex(n);
        out = fftw_alloc_complex(n);
        plan = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~FftwPlan() {
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
    FftwPlan(FftwPlan const&) = delete;
    FftwPlan& operator=(FftwPlan const&) = delete;

    int n;
    fftw_complex* in;
    fftw_complex* out;
    fftw_plan plan;
};

// Samples of u_t and phi_t on one circle; false if any evaluation fails.
bool sample_circle(Scenario const& s, double t, double r, int m, std::vector<cplx>& u, std::vector<cplx>& phi) {
    u.resize(m);
    phi.resize(m);
    try {
        for (int n = 0; n < m; ++n) {
            cplx z = std::polar(r, 2.0 * pi * n / m);
            phi[n] = s.flow(t, z);
            u[n] = s.cocycle(t, z);
        }
    } catch (Error const&) {
        return false;
    }
    return true;
}

}  // namespace

TruncationMatrix build_matrix(Scenario const& s, double t, int N, TruncationOptions const& options) {
    if (s.p() != 2.0) throw Error(ErrorKind::precondition, "truncation oracle works on A^2 only (p = 2)");
    if (N < 1 || N > 256) throw Error(ErrorKind::precondition, "truncation size must satisfy 1 <= N <= 256");
    if (t < 0) throw Error(ErrorKind::precondition, "truncation needs t >= 0");
    int m = options.angular_nodes;
    if (m < 2 * N) throw Error(ErrorKind::precondition, "angular nodes must be at least 2N");

    TruncationMatrix out;
    out.N = N;
    out.t = t;
    out.scenario = s.model_name();
    out.angular_nodes = m;
    out.radial_nodes = N + options.extra_radial_nodes;

    GaussLegendre rule(out.radial_nodes);
    std::vector<cplx> u, phi;
    std::vector<std::vector<cplx>> us, phis;
    std::vector<double> rr, rw;
    for (double outer : {1.0, options.clip_radius}) {
        rule.map(0.0, outer, rr, rw);
        us.assign(rr.size(), {});
        phis.assign(rr.size(), {});
        bool ok = true;
        for (std::size_t i = 0; i < rr.size() && ok; ++i) {
            ok = sample_circle(s, t, rr[i], m, u, phi);
            us[i] = u;
            phis[i] = phi;
        }
        if (ok) {
            out.clip_radius = outer;
            break;
        }
        if (outer != 1.0) throw Error(ErrorKind::evaluation, "truncation quadrature failed inside the clip radius");
    }
    if (out.clip_radius < 1.0) {
        // Dropped ring: |u_t phi_t^k| <= |u_t|, estimated by its size on the clip circle.
        double r = out.clip_radius;
        sample_circle(s, t, r, m, u, phi);
        double umax = 0.0;
        for (cplx x : u) umax = std::max(umax, std::abs(x));
        out.truncation_error_bound = umax * 2.0 * N * (1.0 - r) * std::sqrt(double(N));
    }

    // a_j = (2j + 2) * integral_0^R c_j(r) r^{j+1} dr, c_j(r) the j-th Fourier coefficient on |z| = r.
    FftwPlan fft(m);
    Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(N, N);
    std::vector<cplx> power(m);
    for (std::size_t i = 0; i < rr.size(); ++i) {
        std::fill(power.begin(), power.end(), cplx(1.0));
        for (int k = 0; k < N; ++k) {
            for (int n = 0; n < m; ++n) {
                cplx f = us[i][n] * power[n];
                fft.in[n][0] = f.real();
                fft.in[n][1] = f.imag();
            }
            fftw_execute(fft.plan);
            double rj = rr[i];  // r^{j+1}, starting at j = 0
            for (int j = 0; j < N; ++j) {
                cplx cj(fft.out[j][0] / m, fft.out[j][1] / m);
                coeff(j, k) += rw[i] * cj * rj;
                rj *= rr[i];
            }
            for (int n = 0; n < m; ++n) power[n] *= phis[i][n];
        }
    }
    out.entries.resize(N, N);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
            out.entries(j, k) = coeff(j, k) * (2.0 * j + 2.0) * std::sqrt((k + 1.0) / (j + 1.0));
    if (t == 0.0) out.entries = Eigen::MatrixXcd::Identity(N, N);
    return out;
}

double operator_norm(Eigen::MatrixXcd const& A, bool* stagnated) {
    int n = int(A.cols());
    Eigen::VectorXcd x(n);
    // Fixed, generic start vector so results are reproducible.
    for (int k = 0; k < n; ++k) x(k) = cplx(1.0 + 0.5 * std::sin(1.0 + k), 0.25 * std::cos(2.0 + 3.0 * k));
    x.normalize();
    double sigma2 = 0.0;
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
        Eigen::VectorXcd y = A.adjoint() * (A * x);
        double next = y.norm();
        if (next == 0.0) {
            sigma2 = 0.0;
            converged = true;
            break;
        }
        x = y / next;
        if (std::abs(next - sigma2) <= 1e-10 * next) {
            sigma2 = next;
            converged = true;
            break;
        }
        sigma2 = next;
    }
    if (stagnated) *stagnated = !converged;
    return std::sqrt(sigma2);
}

GelfandEstimate gelfand_radius(Eigen::MatrixXcd const& M, int n_max) {
    if (n_max < 8) throw Error(ErrorKind::precondition, "gelfand radius needs n_max >= 8");
    if (M.rows() != M.cols()) throw Error(ErrorKind::precondition, "gelfand radius needs a square matrix");
    GelfandEstimate out;
    Eigen::MatrixXcd P = M;
    out.radius = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) P = P * M;
        bool stag = false;
        double value = std::pow(operator_norm(P, &stag), 1.0 / n);
        out.sequence.push_back(value);
        out.stagnated.push_back(stag);
        if (value < out.radius) {
            out.radius = value;
            out.argmin = n;
        }
    }
    return out;
}

std::vector<cplx> eigen_cloud(Eigen::MatrixXcd const& M) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, false);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::evaluation, "dense eigenvalue routine failed");
    std::vector<cplx> values(solver.eigenvalues().data(), solver.eigenvalues().data() + M.rows());
    std::sort(values.begin(), values.end(), [](cplx a, cplx b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        return std::arg(a) < std::arg(b);
    });
    return values;
}

}  // namespace bergspec
