#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "dskg/field.hpp"
#include "dskg/kernels.hpp"
#include "dskg/transform.hpp"
#include "dskg/wave.hpp"

namespace dskg::verify {

// Outcome of measuring one claimed estimate. Every claim checked here has
// the shape  measured(p) <= C * bound(p)  for some unspecified constant C,
// so the meaningful output is the ratio measured/bound at each swept point:
// max_ratio is the smallest constant the sweep admits. The pass flag never
// means that some hard-coded constant was matched; it means the ratios
// stayed positive and finite and the headline number was stable under
// refinement, which is the numerical signature of a genuine uniform bound.
//
// Two families share the type. Sweep checks refine by densifying the
// parameter grid and tightening the quadrature; drift is the relative
// movement of max_ratio and must stay below drift_tolerance. Rate checks
// (decay fits, expansion slopes) compare a fitted exponential rate with the
// claimed one; drift is the relative rate mismatch that pass tests against,
// and measured_rate/expected_rate carry the two exponents.
struct EstimateReport {
    std::string name;
    std::vector<double> points;  // swept parameter values (or sample times)
    std::vector<double> ratios;  // measured / claimed bound shape, per point
    double max_ratio = 0.0;      // empirical constant over the sweep
    double witness = 0.0;        // swept value attaining max_ratio
    double drift = 0.0;          // relative movement under refinement
    double drift_tolerance = 0.2;
    double measured_rate = 0.0;  // rate checks only
    double expected_rate = 0.0;
    bool log_corrected = false;
    bool pass = false;
};

// Weighted moment of the zero-mass kernel profile over the backward cone,
//   integral_0^{z-1} r^a ((z+1)^2 - r^2)^{-1/2} F(1/2,1/2;1;w) dr
// with w = ((z-1)^2 - r^2) / ((z+1)^2 - r^2), for -1 < a <= 0 and z > 1.
// The claimed bound shape is z^{-1} (z-1)^{1+a} (1 + ln z). Evaluated by
// adaptive quadrature to the given tolerance.
double zero_mass_moment(double a, double z, double tol = 1e-9);

// Moment of the modulus of the two-term kernel bracket with imaginary mass
// parameter mu >= 0,
//   integral_0^{z-1} y^a |c1 F1 + c2 F2| / (Q sqrt(D)) dy,
// where D = (z+1)^2 - y^2, Q = (z-1)^2 - y^2, w = Q/D,
//   F1 = F(1/2 + i mu, 1/2 + i mu; 1; w),
//   F2 = F(-1/2 + i mu, 1/2 + i mu; 1; w),
//   c1 = z - z^2 - i mu (1 - z^2 - y^2),  c2 = (z^2 - 1 + y^2)(1/2 - i mu),
// for a > -1 and z > 1. Since c1 + c2 = -Q/2 identically, the bracket is
// evaluated in the regrouped form c1 (F1 - F2)/(w D) - F2/2, which stays
// finite at the cone edge where Q vanishes. The claimed bound shape is
// z^{-1/2} (z-1)^{1+a} (1 + ln z)^{1-sgn}, sgn = 1 for mu > 0 and 0 at mu=0.
double oscillatory_moment(double a, double mu, double z, double tol = 1e-9);

// Sweep the moments over z_grid, refine (geometric-midpoint insertion plus
// a 10x tighter quadrature tolerance), and report ratio stability.
EstimateReport check_zero_mass_moment(double a, std::vector<double> z_grid,
                                      double tol = 1e-9);
EstimateReport check_oscillatory_moment(double a, double mu,
                                        std::vector<double> z_grid,
                                        double tol = 1e-9);

// Centered-difference residual of the source kernel in its governing
// equation  E_tt - e^{-2t} E_rr - M^2 E = 0  at one point, step h. The
// stencil must stay inside the support cone r < e^{-b} - e^{-t}.
double kernel_equation_residual(double r, double t, double b,
                                const kernels::MassParams& mp, double h);

// Observed convergence order log2(residual(h) / residual(h/2)); close to 2
// exactly when the kernel solves the equation (the residual is then pure
// second-order truncation error of the stencil).
double kernel_equation_order(double r, double t, double b,
                             const kernels::MassParams& mp, double h = 2e-2);

// The decay rate of ||psi(t)|| that the linear estimates guarantee: real-M
// regimes decay like e^{-(n/2 - M)t}; above the mass threshold the velocity
// part gives n/2 while the position part is only guaranteed (n-1)/2. A
// (1+t) factor is claimed exactly when M = 0.
double expected_linear_rate(const kernels::MassParams& mp, bool velocity_data);

// Solve the linear problem with single-kind data g, fit the decay rate of
// the H_(s) norm over the late window phi(t) > 0.9 (log-corrected iff
// M = 0), and compare with expected_linear_rate. ratios hold the measured
// norm against the claimed shape e^{-rate t} (1+t)^{0 or 1} on the window.
// Since the claim bounds the norm from above, pass requires the fitted rate
// to be no more than 5% slower than claimed; faster decay (the position-data
// claims above the threshold are not sharp) also passes.
EstimateReport check_linear_decay(const kernels::MassParams& mp,
                                  bool velocity_data,
                                  const Eigen::Ref<const Eigen::ArrayXd>& g,
                                  const wave::WaveSolver& base, double s,
                                  const std::vector<double>& times,
                                  const transform::QuadratureSpec& q = {});

// Sharp-propagation measurement: with data supported in rho <= rho_0 and a
// probe at rho_p, everything the probe will ever see has passed once the
// compactified cone phi(t) = 1 - e^{-t} exceeds rho_p + rho_0.
struct HuygensReport {
    double support_radius = 0.0;
    double probe_radius = 0.0;
    double peak = 0.0;          // max |psi| at the probe over all samples
    double tail = 0.0;          // max |psi| at the probe after cone passage
    double tail_ratio = 0.0;    // tail / peak
    double window_start = 0.0;  // earliest sampled time past the cone
    bool pass = false;          // tail <= threshold * peak
    std::vector<double> times;
    std::vector<double> probe_abs;  // |psi| at the probe, one per sample
};

// Sampled times must reach past the cone passage; the probe is the grid
// point nearest probe_radius. The threshold default sits two orders above
// the solver noise floor measured on data the probe never sees.
HuygensReport check_huygens(const kernels::MassParams& mp,
                            const wave::WaveSolver& base,
                            const Eigen::Ref<const Eigen::ArrayXd>& psi0,
                            const Eigen::Ref<const Eigen::ArrayXd>& psi1,
                            double support_radius, double probe_radius,
                            const std::vector<double>& times,
                            double threshold = 1e-6,
                            const transform::QuadratureSpec& q = {});

// Taylor coefficients, in powers of z = e^{-t}, of the base wave solutions
// about the full-cone limit: with V the sine solution (data (0, phi)) and
// v = dV/dr the cosine solution (data (phi, 0)),
//   V[k] = ((-1)^k / k!) d^k/dr^k V(., r) at r = 1,   likewise v[k],
// so that V(., 1 - z) = sum_k V[k] z^k. Computed by differentiating the
// spectral multipliers, hence exact up to rounding; requires a spectral
// base. The two families satisfy v[k] = -(k+1) V[k+1] identically.
struct AsymptoticCoefficients {
    std::vector<Eigen::ArrayXd> V;
    std::vector<Eigen::ArrayXd> v;
};
AsymptoticCoefficients asymptotic_coefficients(
    const Eigen::Ref<const Eigen::ArrayXd>& phi, int k_max,
    const wave::WaveSolver& base);

// Late-time expansion check at the critical mass. Builds the degree-(N-1)
// polynomial
//   psi_N(x, z) = z^{(n-1)/2} sum_{k<N} [ (n-1)/2 V0[k] - (k+1) V0[k+1]
//                                         + V1[k] ](x) z^k
// from the coefficients of the two data pieces, measures the sup-norm error
// E_N(t) = ||psi(., t) - psi_N(., e^{-t})||_inf over the given times (all
// of which must satisfy e^{-t} <= 0.1), and fits the slope of -log E_N,
// which the expansion predicts to be N + (n-1)/2. pass is two-sided at 5%:
// the next omitted term fixes the slope, not just bounds it. Throws
// LateWindowUnderflow when E_N reaches the rounding floor in the window.
EstimateReport check_asymptotics(const Eigen::Ref<const Eigen::ArrayXd>& phi0,
                                 const Eigen::Ref<const Eigen::ArrayXd>& phi1,
                                 int N, const kernels::MassParams& mp,
                                 const wave::WaveSolver& base,
                                 const std::vector<double>& times,
                                 const transform::QuadratureSpec& q = {});

}  // namespace dskg::verify
