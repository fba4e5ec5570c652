// Acceptance gate: one line per shipped claim, PASS or FAIL, exit 0 only
// when every line passes. Each check re-derives its verdict from scratch at
// desk scale; tolerances are the shipped ones, written out literally next
// to the measurements they gate.

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dskg/kernels.hpp"
#include "dskg/norms.hpp"
#include "dskg/semilinear.hpp"
#include "dskg/transform.hpp"
#include "dskg/verify.hpp"
#include "dskg/wave.hpp"

using namespace dskg;
using kernels::classify_mass;
using wave::DataKind;
using wave::Geometry;
using wave::WaveSolver;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass,
            const std::string& detail) {
    std::printf("%s  %2d. %s  [%s]\n", pass ? "PASS" : "FAIL", idx,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void run_criterion(int idx, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& fn) {
    try {
        auto [pass, detail] = fn();
        report(idx, name, pass, detail);
    } catch (const std::exception& e) {
        report(idx, name, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double v, int prec = 3) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

Eigen::ArrayXd gaussian(const WaveSolver& base, double a = 1.0,
                        double c = 0.0) {
    return a * (-(base.grid() - c).square()).exp();
}

// closed form of psi'' + 3 psi' + m^2 psi = 0, psi(0)=1, psi'(0)=0
double ode_const_data(double t, double m) {
    double M2 = 2.25 - m * m;
    if (M2 > 1e-14) {
        double M = std::sqrt(M2);
        return std::exp(-1.5 * t) *
               (std::cosh(M * t) + 1.5 / M * std::sinh(M * t));
    }
    if (M2 < -1e-14) {
        double mu = std::sqrt(-M2);
        return std::exp(-1.5 * t) *
               (std::cos(mu * t) + 1.5 / mu * std::sin(mu * t));
    }
    return std::exp(-1.5 * t) * (1.0 + 1.5 * t);
}

// data pair scaled so the combined H_s norm equals eps
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> scaled_data(const WaveSolver& base,
                                                      double s, double eps) {
    Eigen::ArrayXd g0 = gaussian(base);
    Eigen::ArrayXd g1 = (-0.5 * base.grid() * gaussian(base)).eval();
    double total =
        norms::sobolev_norm(Field{g0, base.extent(), base.geometry()}, s) +
        norms::sobolev_norm(Field{g1, base.extent(), base.geometry()}, s);
    return {g0 * (eps / total), g1 * (eps / total)};
}

std::vector<double> uniform_times(double t0, double t1, double dt) {
    std::vector<double> ts;
    for (double t = t0; t <= t1 + 1e-9; t += dt) ts.push_back(t);
    return ts;
}

// -------------------------------------------------------------------------
// 1. The propagator kernels solve their governing equation: the centered
//    residual shrinks at second order in the stencil step, across the real
//    and oscillatory mass ranges.
std::pair<bool, std::string> kernels_solve_equation() {
    // masses chosen so the kernel parameter covers both branches:
    // real values 0.3, 0.5, 1.118 and oscillatory values 0.66, 1.32
    const std::vector<double> masses{1.4697, std::sqrt(2.0), 1.0, 1.6388,
                                     1.9981};
    double lo = 3.0, hi = 0.0;
    for (double m : masses) {
        auto mp = classify_mass(3.0, m);
        double order = verify::kernel_equation_order(0.12, 1.0, 0.2, mp, 0.02);
        lo = std::min(lo, order);
        hi = std::max(hi, order);
    }
    bool pass = lo >= 1.8 && hi <= 2.2;
    return {pass, "orders in [" + fmt(lo, 4) + ", " + fmt(hi, 4) +
                      "], required 2.0 +- 0.2"};
}

// 2. At the critical mass the transform solution matches the independent
//    first-derivative closed form on the grid to 1e-8, out to t = 8.
std::pair<bool, std::string> critical_closed_form() {
    int N = 256;
    WaveSolver base(Geometry::Periodic1D, 10.0, N);
    auto mp = classify_mass(3.0, std::sqrt(2.0));
    Eigen::ArrayXd psi0 = gaussian(base);
    Eigen::ArrayXd psi1 =
        (base.grid() * (-0.5 * base.grid().square()).exp()).eval();
    std::vector<double> times{0.5, 2.0, 5.0, 8.0};
    auto traj = transform::solve_linear_cauchy(psi0, psi1, mp, base, times);

    WaveSolver v0 = base, V0 = base, V1 = base;
    v0.set_data(DataKind::CosineData, psi0);
    V0.set_data(DataKind::SineData, psi0);
    V1.set_data(DataKind::SineData, psi1);
    double err = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double t = times[i], phi = -std::expm1(-t);
        Eigen::ArrayXd want =
            std::exp(-t) * (v0.at(phi) + V0.at(phi) + V1.at(phi));
        err = std::max(err, (traj.fields[i] - want).abs().maxCoeff());
    }
    return {err <= 1e-8, "max grid error " + fmt(err) + " <= 1e-8"};
}

// 3. Spatially constant problems collapse to damped-oscillator ODEs whose
//    solutions are known exactly: data runs match to 1e-7 relative, the
//    unit-source run to 1e-6.
std::pair<bool, std::string> constant_problem_oracles() {
    WaveSolver base(Geometry::Periodic1D, 5.0, 64);
    auto times = transform::default_times(8.0, 17);
    Eigen::ArrayXd one = Eigen::ArrayXd::Constant(base.size(), 1.0);
    Eigen::ArrayXd zero = Eigen::ArrayXd::Zero(base.size());

    double data_err = 0.0;
    for (double m : {1.0, 1.5, 2.0}) {
        auto mp = classify_mass(3.0, m);
        auto traj = transform::solve_linear_cauchy(one, zero, mp, base, times);
        double scale = 1.0;  // sup_t |oracle| is attained at t = 0
        for (std::size_t i = 0; i < times.size(); ++i)
            data_err = std::max(
                data_err, std::abs(traj.fields[i][0] -
                                   ode_const_data(times[i], m)) /
                              scale);
    }

    auto mp = classify_mass(3.0, 1.0);
    transform::SourceFn unit = [&](double) { return one; };
    auto forced = transform::solve_source(unit, mp, base, times);
    double src_err = 0.0, src_scale = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double want = 1.0 - ode_const_data(times[i], 1.0);
        src_scale = std::max(src_scale, std::abs(want));
        src_err = std::max(src_err, std::abs(forced.fields[i][0] - want));
    }
    src_err /= src_scale;

    bool pass = data_err <= 1e-7 && src_err <= 1e-6;
    return {pass, "data error " + fmt(data_err) + " <= 1e-7, source error " +
                      fmt(src_err) + " <= 1e-6"};
}

// 4. Fitted decay exponents of the linear flow match the claimed rates to
//    5%: n/2 - sqrt(n^2/4 - m^2) below the threshold, (n-1)/2 at the
//    critical mass with velocity data.
std::pair<bool, std::string> linear_decay_rates() {
    WaveSolver base(Geometry::Periodic1D, 10.0, 256);
    Eigen::ArrayXd g = gaussian(base);
    auto times = uniform_times(0.0, 12.0, 0.5);
    std::ostringstream detail;
    bool pass = true;
    for (double m : {1.0, 1.2, std::sqrt(2.0)}) {
        auto mp = classify_mass(3.0, m);
        auto rep = verify::check_linear_decay(mp, true, g, base, 2.0, times);
        double drift = std::abs(rep.measured_rate - rep.expected_rate) /
                       rep.expected_rate;
        pass = pass && drift <= 0.05;
        detail << "m=" << fmt(m) << ": " << fmt(rep.measured_rate, 4) << " vs "
               << fmt(rep.expected_rate, 4) << "  ";
    }
    return {pass, detail.str() + "(all within 5%)"};
}

// 5. Sharp propagation holds exactly at the critical mass: the probe tail
//    dies to 1e-6 of its peak there, and stays above 1e-3 at nearby and
//    distant off-critical masses.
std::pair<bool, std::string> huygens_dichotomy() {
    WaveSolver base(Geometry::Radial3D, 4.0, 1024);
    Eigen::ArrayXd zero = Eigen::ArrayXd::Zero(base.size());
    Eigen::ArrayXd bump = zero;
    for (int j = 0; j < base.size(); ++j) {
        double d = base.grid()[j] / 0.3;
        if (d < 1.0) bump[j] = std::exp(1.0 - 1.0 / (1.0 - d * d));
    }
    auto times = uniform_times(0.25, 5.0, 0.25);
    transform::QuadratureSpec q;
    q.n_s = 256;

    auto crit = verify::check_huygens(classify_mass(3.0, std::sqrt(2.0)), base,
                                      zero, bump, 0.3, 0.35, times, 1e-6, q);
    bool pass = crit.pass && crit.tail_ratio <= 1e-6;
    double worst_off = 1.0;
    for (double m : {1.0, 1.5, 1.77}) {
        auto rep = verify::check_huygens(classify_mass(3.0, m), base, zero,
                                         bump, 0.3, 0.35, times, 1e-6, q);
        worst_off = std::min(worst_off, rep.tail_ratio);
        pass = pass && !rep.pass && rep.tail_ratio >= 1e-3;
    }
    return {pass, "critical tail ratio " + fmt(crit.tail_ratio) +
                      " <= 1e-6, off-critical >= " + fmt(worst_off) +
                      " (>= 1e-3)"};
}

// 6. Late-time expansions at the critical mass: truncation after N terms
//    loses error at slope N + (n-1)/2 (5%, two-sided), and the two
//    coefficient families satisfy the exact shift identity to 1e-10.
std::pair<bool, std::string> asymptotic_expansion() {
    int N = 512;
    WaveSolver base(Geometry::Periodic1D, 10.0, N);
    auto mp = classify_mass(3.0, std::sqrt(2.0));
    Eigen::ArrayXd phi0 = (1.3 * gaussian(base) - 0.4 * gaussian(base, 1.0, 2.0)).eval();
    Eigen::ArrayXd phi1 =
        (-0.7 * base.grid() * gaussian(base, 1.0, 0.5)).eval();
    auto times = uniform_times(2.5, 7.5, 0.5);

    bool pass = true;
    std::ostringstream detail;
    for (int order : {1, 2}) {
        auto rep =
            verify::check_asymptotics(phi0, phi1, order, mp, base, times);
        pass = pass && rep.pass;
        detail << "N=" << order << ": slope " << fmt(rep.measured_rate, 4)
               << " vs " << fmt(rep.expected_rate, 2) << "  ";
    }

    auto c = verify::asymptotic_coefficients(phi0, 4, base);
    double ident = 0.0;
    for (int k = 0; k <= 3; ++k)
        ident = std::max(
            ident, (c.v[k] + (k + 1.0) * c.V[k + 1]).abs().maxCoeff());
    pass = pass && ident <= 1e-10;
    detail << "shift identity " << fmt(ident) << " <= 1e-10";
    return {pass, detail.str()};
}

// 7. The kernel moment bounds hold uniformly over z in [1.1, 1e3]: the
//    measured-to-claimed ratio stays finite and its maximum moves < 20%
//    under sweep refinement, for both weight exponents and both mass
//    parameters.
std::pair<bool, std::string> moment_bounds() {
    std::vector<double> grid;
    for (int i = 0; i < 13; ++i)
        grid.push_back(1.1 * std::pow(1000.0 / 1.1, i / 12.0));
    bool pass = true;
    double max_drift = 0.0;
    for (double a : {0.0, -0.5}) {
        auto rep = verify::check_zero_mass_moment(a, grid);
        pass = pass && rep.pass && rep.drift < 0.2;
        max_drift = std::max(max_drift, rep.drift);
        for (double mu : {0.0, 1.0}) {
            auto osc = verify::check_oscillatory_moment(a, mu, grid);
            pass = pass && osc.pass && osc.drift < 0.2;
            max_drift = std::max(max_drift, osc.drift);
        }
    }
    return {pass, "6 sweeps, max refinement drift " + fmt(max_drift) +
                      " < 0.2"};
}

// 8. Global small-data solves contract and land on the fixed point: cubic
//    nonlinearity, data of combined H_2 size 1e-2, weights 1/3 (critical
//    mass) and min(gamma0, 1/2) (m = 2).
std::pair<bool, std::string> semilinear_contraction() {
    double s = 2.0, eps = 1e-2;
    WaveSolver base(Geometry::Periodic1D, 6.0, 64);
    auto times = transform::default_times(8.0, 17);
    semilinear::Nonlinearity cubic{semilinear::NonlinearityKind::OddCubic, 2.0,
                                   1.0, {}};
    semilinear::PicardOptions opt;
    opt.tol = 1e-13;  // push past stopping so contraction ratios get recorded

    bool pass = true;
    std::ostringstream detail;
    for (double m : {std::sqrt(2.0), 2.0}) {
        auto mp = classify_mass(3.0, m);
        double gamma0 = 1.0;  // auxiliary rate, capped by (n-1)/2
        double gamma = m < 1.9 ? 1.0 / 3.0 : std::min(gamma0, 3.0 / 6.0);
        auto [g0, g1] = scaled_data(base, s, eps);
        auto res = semilinear::picard_solve(g0, g1, {}, cubic, mp, base, gamma,
                                            times, opt);
        auto lin = transform::solve_linear_cauchy(g0, g1, mp, base, times);
        double fp = semilinear::fixed_point_residual(res.traj, lin, cubic, mp,
                                                     base, gamma, s);
        double rmax = 0.0;
        for (double r : res.log.ratios) rmax = std::max(rmax, r);
        bool ok = res.log.converged && !res.log.ratios.empty() && rmax < 1.0 &&
                  fp <= 2e-8 && res.log.weighted_norm < 2.0 * eps;
        pass = pass && ok;
        detail << "m=" << fmt(m) << ": ratio " << fmt(rmax) << ", residual "
               << fmt(fp) << ", weighted norm " << fmt(res.log.weighted_norm)
               << " < " << fmt(2.0 * eps) << "  ";
    }
    return {pass, detail.str()};
}

// 9. Source-driven semilinear decay: a source falling at rate 0.3 with an
//    alpha = 1 nonlinearity keeps the weighted norm finite at gamma = 0.14,
//    and the fitted decay of the solution stays at or above 0.14.
std::pair<bool, std::string> source_driven_decay() {
    double s = 2.0, eps = 1e-2;
    WaveSolver base(Geometry::Periodic1D, 6.0, 64);
    auto mp = classify_mass(3.0, 1.0);
    semilinear::Nonlinearity nl{semilinear::NonlinearityKind::PowerAbs, 1.0,
                                1.0, {}};
    Eigen::ArrayXd shape = gaussian(base);
    shape *= eps / norms::sobolev_norm(
                       Field{shape, base.extent(), base.geometry()}, s);
    transform::SourceFn f = [shape](double b) {
        return (std::exp(-0.3 * b) * shape).eval();
    };
    Eigen::ArrayXd zero = Eigen::ArrayXd::Zero(base.size());
    double gamma = 0.14;
    auto res = semilinear::picard_solve(zero, zero, f, nl, mp, base, gamma,
                                        transform::default_times(12.0, 33));

    // re-evaluate the converged fixed point on a uniform grid for the fit
    auto fnl = semilinear::interpolated_nonlinearity(res.traj, nl);
    transform::SourceFn total = [f, fnl](double b) {
        return (f(b) + fnl(b)).eval();
    };
    auto ut = uniform_times(0.0, 12.0, 0.5);
    auto traj = transform::solve_source(total, mp, base, ut);
    std::vector<double> hs(ut.size());
    for (std::size_t i = 0; i < ut.size(); ++i)
        hs[i] = norms::sobolev_norm(traj.field_at(i), s);
    auto fit = norms::fit_decay_rate(ut, hs, -std::log(0.1), 12.0);

    bool pass = res.log.converged && std::isfinite(res.log.weighted_norm) &&
                fit.gamma >= 0.14;
    return {pass, "weighted norm " + fmt(res.log.weighted_norm) +
                      " finite, fitted rate " + fmt(fit.gamma, 4) +
                      " >= 0.14"};
}

// 10. Output stability under refinement: doubling the quadrature moves the
//     norm history by <= 1e-6 relative, doubling the grid by <= 1e-4.
std::pair<bool, std::string> refinement_stability() {
    auto mp = classify_mass(3.0, std::sqrt(2.0));
    auto times = transform::default_times(8.0, 17);
    auto norm_history = [&](int N, const transform::QuadratureSpec& q) {
        WaveSolver base(Geometry::Periodic1D, 10.0, N);
        auto traj = transform::solve_linear_cauchy(
            gaussian(base), Eigen::ArrayXd::Zero(N).eval(), mp, base, times,
            q);
        std::vector<double> hs(times.size());
        for (std::size_t i = 0; i < times.size(); ++i)
            hs[i] = norms::sobolev_norm(traj.field_at(i), 2.0);
        return hs;
    };
    auto delta = [](const std::vector<double>& a,
                    const std::vector<double>& b) {
        double scale = 0.0, diff = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            scale = std::max(scale, std::abs(a[i]));
            diff = std::max(diff, std::abs(a[i] - b[i]));
        }
        return diff / scale;
    };

    transform::QuadratureSpec q, q2;
    q2.n_s *= 2;
    q2.n_b *= 2;
    q2.n_r *= 2;
    auto ref = norm_history(256, q);
    double quad_delta = delta(ref, norm_history(256, q2));
    double grid_delta = delta(ref, norm_history(512, q));
    bool pass = quad_delta <= 1e-6 && grid_delta <= 1e-4;
    return {pass, "quadrature doubling " + fmt(quad_delta) +
                      " <= 1e-6, grid doubling " + fmt(grid_delta) +
                      " <= 1e-4"};
}

}  // namespace

int main() {
    std::printf("acceptance run: de Sitter Klein-Gordon solver\n");
    run_criterion(1, "kernels satisfy their equation at second order",
                  kernels_solve_equation);
    run_criterion(2, "critical-mass solve matches the closed form",
                  critical_closed_form);
    run_criterion(3, "constant-coefficient problems match the ODE oracles",
                  constant_problem_oracles);
    run_criterion(4, "linear decay rates fit the claimed exponents",
                  linear_decay_rates);
    run_criterion(5, "sharp propagation holds exactly at the critical mass",
                  huygens_dichotomy);
    run_criterion(6, "late-time expansion slopes and coefficient identity",
                  asymptotic_expansion);
    run_criterion(7, "kernel moment bounds are uniform over the sweep",
                  moment_bounds);
    run_criterion(8, "small-data semilinear solves contract to fixed points",
                  semilinear_contraction);
    run_criterion(9, "source-driven semilinear decay meets the claimed rate",
                  source_driven_decay);
    run_criterion(10, "outputs are stable under quadrature and grid doubling",
                  refinement_stability);

    std::printf("acceptance: %d/10 criteria passed\n", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
