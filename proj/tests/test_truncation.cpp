#include "doctest.h"

#include <cmath>

#include "bergspec/error.hpp"
#include "bergspec/truncation.hpp"

using namespace bergspec;

namespace {

// Taylor coefficients of phi^k for the strip flow phi(z) = (z + T) / (1 + T z), by
// direct series multiplication.
Eigen::MatrixXcd strip_taylor_matrix(double t, int N) {
    double T = std::tanh(0.5 * t);
    std::vector<double> phi(N, 0.0);
    // (z + T) * sum (-T z)^n
    for (int n = 0; n < N; ++n) {
        double geo = std::pow(-T, n);
        phi[n] += T * geo;
        if (n + 1 < N) phi[n + 1] += geo;
    }
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
    std::vector<double> power(N, 0.0);
    power[0] = 1.0;
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) M(j, k) = power[j] * std::sqrt(double(k + 1) / double(j + 1));
        std::vector<double> next(N, 0.0);
        for (int a = 0; a < N; ++a)
            for (int b = 0; a + b < N; ++b) next[a + b] += power[a] * phi[b];
        power = next;
    }
    return M;
}

}  // namespace

TEST_CASE("identity at t = 0 and fixed constants") {
    TruncationMatrix m0 = build_matrix(Scenario::trident(), 0.0, 12);
    CHECK((m0.entries - Eigen::MatrixXcd::Identity(12, 12)).norm() == 0.0);
    for (Scenario const& s : {Scenario::strip_flow(1.0), Scenario::trident(), Scenario::half_strip()}) {
        TruncationMatrix m = build_matrix(s, 1.0, 16);
        Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(16);
        e0(0) = 1.0;
        CHECK((m.entries.col(0) - e0).norm() < 1e-12);
    }
}

TEST_CASE("strip flow matrix against series composition") {
    TruncationMatrix m = build_matrix(Scenario::strip_flow(1.0), 1.0, 60);
    Eigen::MatrixXcd oracle = strip_taylor_matrix(1.0, 60);
    CHECK((m.entries - oracle).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(m.N == 60);
    CHECK(m.radial_nodes == 68);
    CHECK(m.angular_nodes == 1024);
}

TEST_CASE("semigroup consistency of truncations") {
    Scenario s = Scenario::strip_flow(1.0, 2.0, {0.2, 0.3, 0.0});
    int N = 96, B = N / 2;
    Eigen::MatrixXcd a = build_matrix(s, 0.5, N).entries;
    Eigen::MatrixXcd b = build_matrix(s, 0.7, N).entries;
    Eigen::MatrixXcd ab = build_matrix(s, 1.2, N).entries;
    Eigen::MatrixXcd prod = a * b;
    double diff = (prod.topLeftCorner(B, B) - ab.topLeftCorner(B, B)).operatorNorm();
    CHECK(diff < 1e-3);
}

TEST_CASE("Gelfand radius estimates") {
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(10, 10);
    CHECK(gelfand_radius(id, 8).radius == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::MatrixXcd half = 0.5 * id;
    GelfandEstimate g = gelfand_radius(half, 8);
    CHECK(g.radius == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.sequence.size() == 8);
    CHECK_THROWS_AS(gelfand_radius(id, 4), Error);

    Eigen::MatrixXcd jordan = Eigen::MatrixXcd::Zero(3, 3);
    jordan(0, 1) = 1.0;
    CHECK(operator_norm(jordan) == doctest::Approx(1.0));

    TruncationMatrix m = build_matrix(Scenario::strip_flow(1.0), 1.0, 40);
    double previous = std::numeric_limits<double>::infinity();
    for (int n_max = 8; n_max <= 20; n_max += 4) {
        double r = gelfand_radius(m.entries, n_max).radius;
        CHECK(r <= previous);
        previous = r;
    }
}

TEST_CASE("eigenvalue clouds") {
    for (cplx v : eigen_cloud(Eigen::MatrixXcd::Identity(6, 6))) CHECK(std::abs(v - 1.0) < 1e-12);
    Eigen::VectorXcd d(4);
    d << 0.1, -2.0, cplx(0.0, 0.5), 1.0;
    std::vector<cplx> cloud = eigen_cloud(d.asDiagonal().toDenseMatrix());
    REQUIRE(cloud.size() == 4);
    CHECK(std::abs(cloud[0] + 2.0) < 1e-12);
    CHECK(std::abs(cloud[1] - 1.0) < 1e-12);
    CHECK(std::abs(cloud[2] - cplx(0.0, 0.5)) < 1e-12);
    CHECK(std::abs(cloud[3] - 0.1) < 1e-12);

    TruncationMatrix m = build_matrix(Scenario::strip_flow(1.0), 1.0, 60);
    CHECK(std::abs(eigen_cloud(m.entries).front()) <= 1.15 * std::exp(1.0));
}

TEST_CASE("radius bound on built-in scenarios") {
    double e = std::exp(1.0);
    for (Scenario const& s : {Scenario::strip_flow(1.0), Scenario::trident()}) {
        TruncationMatrix m = build_matrix(s, 1.0, 60);
        CHECK(gelfand_radius(m.entries, 24).radius <= 1.05 * e);
    }
}

TEST_CASE("truncation preconditions") {
    CHECK_THROWS_AS(build_matrix(Scenario::strip_flow(1.0, 3.0), 1.0, 10), Error);
    CHECK_THROWS_AS(build_matrix(Scenario::strip_flow(1.0), 1.0, 257), Error);
    CHECK_THROWS_AS(build_matrix(Scenario::strip_flow(1.0), -1.0, 10), Error);
    CHECK_THROWS_AS(build_matrix(Scenario::parametric(2.0, {{1.0, 1.0, {}, Role::denjoy_wolff}}), 1.0, 10), Error);
}
