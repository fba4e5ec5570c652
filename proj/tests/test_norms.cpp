#include "doctest.h"

#include <cmath>
#include <random>

#include "dskg/errors.hpp"
#include "dskg/norms.hpp"

using namespace dskg;
using namespace dskg::norms;
using wave::Geometry;

namespace {

Field make_periodic(double L, int N, const std::function<double(double)>& g) {
    Field f;
    f.extent = L;
    f.geom = Geometry::Periodic1D;
    f.values.resize(N);
    for (int j = 0; j < N; ++j) f.values[j] = g(-L + j * (2.0 * L / N));
    return f;
}

}  // namespace

TEST_SUITE_BEGIN("norms");

TEST_CASE("Sobolev norm: single modes and Parseval") {
    double L = 7.0;  // period 14
    int N = 256;
    double period = 2.0 * L;
    auto mode = make_periodic(L, N, [&](double x) {
        return std::sin(2.0 * M_PI * x / period);
    });
    CHECK(sobolev_norm(mode, 0.0) ==
          doctest::Approx(std::sqrt(period / 2.0)).epsilon(1e-13));
    double xi1 = 2.0 * M_PI / period;
    CHECK(sobolev_norm(mode, 2.0) ==
          doctest::Approx((1.0 + xi1 * xi1) * std::sqrt(period / 2.0))
              .epsilon(1e-13));
    // k-th mode picks up (1 + xi_k^2)^{s/2}
    auto mode5 = make_periodic(L, N, [&](double x) {
        return std::sin(5.0 * 2.0 * M_PI * x / period);
    });
    double xi5 = 5.0 * 2.0 * M_PI / period;
    CHECK(sobolev_norm(mode5, 2.0) ==
          doctest::Approx((1.0 + xi5 * xi5) * std::sqrt(period / 2.0))
              .epsilon(1e-12));

    // s = 0 equals the direct grid L2 norm
    auto messy = make_periodic(L, N, [](double x) {
        return std::exp(-x * x / 3.0) + 0.2 * std::cos(3.0 * x);
    });
    double h = period / N;
    double direct = std::sqrt((messy.values.square() * h).sum());
    CHECK(sobolev_norm(messy, 0.0) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("Sobolev norm: Gaussian H1 reference") {
    // reference: sqrt(1.5 sqrt(pi)), the closed-form H1 norm of e^{-x^2/2}
    // on the line, frozen from a 40-digit evaluation
    double want = 1.630546158916782717691933;
    auto g = make_periodic(18.0, 1024, [](double x) { return std::exp(-0.5 * x * x); });
    CHECK(sobolev_norm(g, 1.0) == doctest::Approx(want).epsilon(1e-7));
}

TEST_CASE("radial fields measured through the odd extension") {
    int N = 512;
    double L = 10.0;
    Field u;
    u.extent = L;
    u.geom = Geometry::Radial3D;
    u.values.resize(N);
    double h = L / N;
    for (int j = 1; j <= N; ++j) {
        double p = j * h;
        u.values[j - 1] = std::exp(-p * p);
    }
    // L2 of the extension w = rho u: 2 * int_0^L rho^2 e^{-2 rho^2} d rho,
    // a quarter of the Gaussian moment integral sqrt(pi/2)/4 each side
    double want = std::sqrt(2.0 * (std::sqrt(M_PI / 2.0) / 8.0));
    CHECK(sobolev_norm(u, 0.0) == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("Besov norm: partition, shells, and Sobolev consistency") {
    double L = 7.0;
    int N = 256;
    double period = 2.0 * L;

    // a single mode sitting exactly at the center of dyadic shell j has one
    // active block: norm = 2^{js} * ||u||_p
    int k = static_cast<int>(std::round(4.0 * period / (2.0 * M_PI)));  // xi ~ 4 = 2^2
    double xi_k = 2.0 * M_PI * k / period;
    CHECK(xi_k == doctest::Approx(4.0).epsilon(0.05));
    auto mode = make_periodic(L, N, [&](double x) {
        return std::cos(2.0 * M_PI * k * x / period);
    });
    double l2 = sobolev_norm(mode, 0.0);
    double b = besov_norm(mode, NormSpec::besov(1.5, 2.0, 2.0));
    CHECK(b == doctest::Approx(std::pow(2.0, 2 * 1.5) * l2).epsilon(0.05));

    // Besov(s,2,2) tracks Sobolev(s) on smooth low-frequency fields (wide
    // bumps whose spectrum sits well inside the low-pass block, where the
    // discrete equivalence constants are close to 1)
    for (double s : {0.0, 0.5, 1.0}) {
        auto smooth = make_periodic(30.0, 512, [](double x) {
            return std::exp(-x * x / 128.0) +
                   0.3 * std::cos(2.0 * M_PI * x / 30.0);
        });
        double hs = sobolev_norm(smooth, s);
        double bs = besov_norm(smooth, NormSpec::besov(s, 2.0, 2.0));
        CHECK(std::abs(hs - bs) / hs < 0.05);
    }

    // p = infinity uses the grid max: low-pass of a constant is itself
    auto flat = make_periodic(L, N, [](double) { return 2.5; });
    CHECK(besov_norm(flat, NormSpec::besov(0.0, NormSpec::inf, NormSpec::inf)) ==
          doctest::Approx(2.5).epsilon(1e-10));

    CHECK_THROWS_AS(besov_norm(flat, NormSpec::besov(-0.5, 2.0, 2.0)),
                    dskg::DomainError);
    CHECK_THROWS_AS(besov_norm(flat, NormSpec::besov(0.5, 0.5, 2.0)),
                    dskg::DomainError);
}

TEST_CASE("norms are homogeneous and satisfy the triangle inequality") {
    std::mt19937 rng(42);
    std::normal_distribution<double> dist;
    double L = 5.0;
    int N = 128;
    Field a = make_periodic(L, N, [](double) { return 0.0; });
    Field b = a;
    for (int j = 0; j < N; ++j) {
        a.values[j] = dist(rng);
        b.values[j] = dist(rng);
    }
    Field sum = a;
    sum.values = a.values + b.values;
    for (double s : {0.0, 1.0, 2.5}) {
        CHECK(sobolev_norm(sum, s) <=
              sobolev_norm(a, s) + sobolev_norm(b, s) + 1e-12);
        Field scaled = a;
        scaled.values *= -3.7;
        CHECK(sobolev_norm(scaled, s) ==
              doctest::Approx(3.7 * sobolev_norm(a, s)).epsilon(1e-12));
    }
    auto spec = NormSpec::besov(1.0, 2.0, 1.0);
    CHECK(besov_norm(sum, spec) <=
          besov_norm(a, spec) + besov_norm(b, spec) + 1e-12);
}

TEST_CASE("weighted sup norm over trajectories") {
    Trajectory traj;
    traj.extent = 5.0;
    traj.geom = Geometry::Periodic1D;
    int N = 64;
    Eigen::ArrayXd base(N);
    for (int j = 0; j < N; ++j) {
        double x = -5.0 + j * (10.0 / N);
        base[j] = std::exp(-x * x);
    }
    double gamma = 0.4;
    for (int i = 0; i <= 10; ++i) {
        double t = 0.8 * i;
        traj.times.push_back(t);
        traj.fields.push_back(base * std::exp(-gamma * t));
    }
    Field f0{base, 5.0, Geometry::Periodic1D};
    double g0 = sobolev_norm(f0, 1.0);
    // exact cancellation: the weighted norm is constant, equal to ||g||
    CHECK(weighted_sup_norm(traj, gamma, 1.0) == doctest::Approx(g0).epsilon(1e-12));
    // heavier weight grows with t, so the sup exceeds ||g||
    CHECK(weighted_sup_norm(traj, gamma + 0.1, 1.0) > g0 * 1.5);
    Trajectory empty;
    CHECK_THROWS_AS(weighted_sup_norm(empty, 0.1, 0.0), dskg::DomainError);
}

TEST_CASE("decay-rate fitting, plain and log-corrected") {
    std::vector<double> t, plain, logged, flat;
    for (int i = 0; i < 25; ++i) {
        double ti = 0.5 * i;
        t.push_back(ti);
        plain.push_back(std::exp(-0.5 * ti));
        logged.push_back(std::exp(-ti) * (1.0 + ti));
        flat.push_back(3.0);
    }
    auto f1 = fit_decay_rate(t, plain, 0.0, 12.0);
    CHECK(f1.gamma == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(f1.r_squared == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f1.samples == 25);

    // a plain fit sees the (1+t) factor as rate deficit; the corrected fit
    // recovers the true exponent
    auto f2 = fit_decay_rate(t, logged, 0.0, 12.0);
    CHECK(f2.gamma < 0.95);
    auto f3 = fit_decay_rate(t, logged, 0.0, 12.0, true);
    CHECK(f3.gamma == doctest::Approx(1.0).epsilon(0.02));
    CHECK(f3.beta == doctest::Approx(-1.0).epsilon(0.05));

    auto f4 = fit_decay_rate(t, flat, 0.0, 12.0);
    CHECK(f4.gamma == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(fit_decay_rate(t, plain, 0.0, 2.0), dskg::InsufficientSamples);
    std::vector<double> bad = plain;
    bad[3] = 0.0;
    CHECK_THROWS_AS(fit_decay_rate(t, bad, 0.0, 12.0), dskg::DomainError);
}

TEST_SUITE_END();
