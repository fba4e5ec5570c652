#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "dskg/field.hpp"
#include "dskg/kernels.hpp"
#include "dskg/transform.hpp"
#include "dskg/wave.hpp"

namespace dskg::semilinear {

// Right-hand side nonlinearity F(psi).  The built-in kinds satisfy F(0) = 0
// and are Lipschitz with exponent alpha on bounded sets, which is what the
// contraction argument needs.
enum class NonlinearityKind { PowerAbs, OddCubic, Custom };

struct Nonlinearity {
    NonlinearityKind kind = NonlinearityKind::OddCubic;
    double alpha = 2.0;  // growth exponent (PowerAbs: c|v|^alpha v)
    double c = 1.0;      // coupling constant; c = 0 makes the problem linear
    std::function<Eigen::ArrayXd(const Eigen::ArrayXd&)> custom;

    Eigen::ArrayXd operator()(const Eigen::Ref<const Eigen::ArrayXd>& v) const;
};

// Admissible weighted-decay exponent for the global small-data solution.
// `value` is the endpoint of the admissible interval; `strict` says whether
// the endpoint itself is excluded.  `forbidden_interval` is raised for the
// Cauchy problem with nonzero position data when m sits strictly between
// sqrt(n^2-1)/2 and n/2, where no decay guarantee is available.
struct GammaBound {
    double value = 0.0;
    bool strict = false;
    bool forbidden_interval = false;

    // Largest exponent safely usable in experiments (backs off a strict
    // endpoint by the given relative margin).
    double usable(double margin = 1e-3) const {
        return strict ? value * (1.0 - margin) : value;
    }
};

struct CauchyProblem {
    double gamma0 = 0.0;      // chosen auxiliary rate, used when m >= n/2
    bool psi0_nonzero = true; // whether position data is present
};
struct SourceProblem {
    double gamma_rhs = 0.0;   // decay rate of the driving term
};
using ProblemKind = std::variant<CauchyProblem, SourceProblem>;

GammaBound expected_gamma(const kernels::MassParams& mp, double alpha,
                          const ProblemKind& problem);

// Convergence record of the Picard iteration in the weighted metric
// d(a,b) = sup_t e^{gamma t} |a - b|_{H_s}.
struct IterationLog {
    std::vector<double> distances;  // d_k per iteration
    std::vector<double> ratios;     // d_{k+1}/d_k, recorded while d_k > 0
    double final_distance = 0.0;
    bool converged = false;
    double weighted_norm = 0.0;     // sup_t e^{gamma t} |psi|_{H_s} at exit
};

struct PicardOptions {
    double tol = 1e-8;  // stopping threshold on d_k
    int max_iter = 40;
    double s = 2.0;     // Sobolev index of the metric (needs s > n/2)
    transform::QuadratureSpec quad{};
};

struct PicardResult {
    Trajectory traj;
    IterationLog log;
};

// Solve psi = psi_lin + G[F(psi)] by fixed-point iteration starting from the
// linear solution psi_lin (Cauchy data plus optional forcing).  `times` must
// be uniform in phi(t) = 1 - e^{-t} with times.front() == 0 (the grid
// default_times produces); the iteration interpolates F(psi) between those
// samples cubically in phi when the source solver asks for interior values.
PicardResult picard_solve(const Eigen::Ref<const Eigen::ArrayXd>& psi0,
                          const Eigen::Ref<const Eigen::ArrayXd>& psi1,
                          const transform::SourceFn& f,
                          const Nonlinearity& nl,
                          const kernels::MassParams& mp,
                          const wave::WaveSolver& base, double gamma,
                          const std::vector<double>& times,
                          const PicardOptions& opt = {});

// F(psi) as a continuous-in-time source: cubic interpolation (in phi) of the
// nonlinearity evaluated at the trajectory's samples.  Useful for feeding the
// converged nonlinear term back into the linear machinery, e.g. to measure
// the PDE residual of a semilinear solution on an arbitrary time grid.
transform::SourceFn interpolated_nonlinearity(const Trajectory& traj,
                                              const Nonlinearity& nl);

// sup_t e^{gamma t} |psi - psi_lin - G[F(psi)]|_{H_s}: how far a trajectory
// is from solving the integral equation.  psi_lin must share grid and times.
double fixed_point_residual(const Trajectory& traj, const Trajectory& psi_lin,
                            const Nonlinearity& nl,
                            const kernels::MassParams& mp,
                            const wave::WaveSolver& base, double gamma,
                            double s,
                            const transform::QuadratureSpec& quad = {});

}  // namespace dskg::semilinear
