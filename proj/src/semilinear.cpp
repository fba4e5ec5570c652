#include "dskg/semilinear.hpp"

#include <algorithm>
#include <cmath>

#include "dskg/errors.hpp"
#include "dskg/norms.hpp"

namespace dskg::semilinear {

namespace {

using kernels::MassRegime;

// Half the open gap (sqrt(n^2-1)/2, n/2) has no decay guarantee for general
// position data; these evaluate the two endpoints.
double higuchi_end(double n) { return 0.5 * std::sqrt(n * n - 1.0); }

// n/2 - sqrt(n^2/4 - m^2), the linear decay rate in the small-mass range.
double small_mass_rate(const kernels::MassParams& mp) {
    return 0.5 * mp.n - mp.M.real();
}

GammaBound cauchy_bound(const kernels::MassParams& mp, double alpha,
                        const CauchyProblem& p) {
    double n = mp.n;
    GammaBound out;
    if (mp.m <= higuchi_end(n) + 1e-14) {
        out.value = small_mass_rate(mp) / (alpha + 1.0);
        out.strict = false;
        return out;
    }
    if (mp.m < 0.5 * n && mp.regime != MassRegime::ZeroCurved) {
        // gap masses: guaranteed only for vanishing position data, and then
        // only on the open interval
        out.value = small_mass_rate(mp) / (alpha + 1.0);
        out.strict = true;
        out.forbidden_interval = p.psi0_nonzero;
        return out;
    }
    // m >= n/2: the bound couples the chosen auxiliary rate gamma0 with the
    // universal n/(2(alpha+1)) cap
    double cap = 0.5 * (n - 1.0);
    if (p.gamma0 < 0.0) throw DomainError("gamma0 must be nonnegative");
    if (mp.regime == MassRegime::ZeroCurved) {
        if (p.gamma0 >= cap)
            throw DomainError("gamma0 must be below (n-1)/2 when m = n/2");
    } else if (p.gamma0 > cap) {
        throw DomainError("gamma0 must not exceed (n-1)/2 when m > n/2");
    }
    out.value = std::min(p.gamma0, 0.5 * n / (alpha + 1.0));
    out.strict = false;
    return out;
}

GammaBound source_bound(const kernels::MassParams& mp, double alpha,
                        const SourceProblem& p) {
    double n = mp.n;
    if (p.gamma_rhs < 0.0) throw DomainError("gamma_rhs must be nonnegative");
    GammaBound out;
    double cap = 0.5 * n / (alpha + 1.0);
    if (mp.m < 0.5 * n && mp.regime != MassRegime::ZeroCurved) {
        double rate = small_mass_rate(mp);
        out.value = std::min(p.gamma_rhs, rate) / (alpha + 1.0);
        out.strict = true;
        return out;
    }
    bool zero_curved = mp.regime == MassRegime::ZeroCurved;
    if (p.gamma_rhs < 0.5 * n) {
        out.value = std::min(p.gamma_rhs, cap);
        out.strict = false;
    } else if (p.gamma_rhs > 0.5 * n) {
        out.value = cap;
        out.strict = zero_curved;  // m = n/2 excludes the endpoint
    } else {
        // gamma_rhs == n/2.  For m = n/2 the statement routes through an
        // auxiliary rate chosen strictly below gamma_rhs, but the cap
        // n/(2(alpha+1)) already sits below n/2 for every alpha > 0, so the
        // attainable endpoint is the cap in both mass cases.
        out.value = cap;
        out.strict = false;
    }
    return out;
}

// Uniform-knot Catmull-Rom over field snapshots, with linear-extrapolation
// ghost points at both ends. u is the continuous knot index.
Eigen::ArrayXd interp_fields(const std::vector<Eigen::ArrayXd>& snaps,
                             double u) {
    int K = static_cast<int>(snaps.size());
    int j = std::clamp(static_cast<int>(std::floor(u)), 0, K - 2);
    double x = u - j;
    auto at = [&](int k) -> Eigen::ArrayXd {
        if (k < 0) return 2.0 * snaps[0] - snaps[1];
        if (k >= K) return 2.0 * snaps[K - 1] - snaps[K - 2];
        return snaps[k];
    };
    double x2 = x * x, x3 = x2 * x;
    return 0.5 * ((-x3 + 2.0 * x2 - x) * at(j - 1) +
                  (3.0 * x3 - 5.0 * x2 + 2.0) * at(j) +
                  (-3.0 * x3 + 4.0 * x2 + x) * at(j + 1) +
                  (x3 - x2) * at(j + 2));
}

// The iteration grid must be uniform in phi so the interpolation above has
// equally spaced knots.
void require_phi_uniform(const std::vector<double>& times) {
    if (times.size() < 2 || times.front() != 0.0)
        throw DomainError("times must start at 0 with at least two samples");
    double phi_T = -std::expm1(-times.back());
    double K = static_cast<double>(times.size() - 1);
    for (std::size_t i = 0; i < times.size(); ++i) {
        double phi = -std::expm1(-times[i]);
        if (std::abs(phi - phi_T * i / K) > 1e-9 * phi_T)
            throw DomainError("times must be uniform in phi(t) = 1 - e^{-t}");
    }
}

// Weighted sup distance between two trajectories on the same grid.
double weighted_distance(const Trajectory& a, const Trajectory& b,
                         double gamma, double s) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        Field diff{a.fields[i] - b.fields[i], a.extent, a.geom};
        d = std::max(d, std::exp(gamma * a.times[i]) *
                            norms::sobolev_norm(diff, s));
    }
    return d;
}

}  // namespace

transform::SourceFn interpolated_nonlinearity(const Trajectory& traj,
                                              const Nonlinearity& nl) {
    require_phi_uniform(traj.times);
    std::vector<Eigen::ArrayXd> fsnaps(traj.fields.size());
    for (std::size_t i = 0; i < traj.fields.size(); ++i)
        fsnaps[i] = nl(traj.fields[i]);
    double phi_T = -std::expm1(-traj.times.back());
    double K = static_cast<double>(fsnaps.size() - 1);
    return [fsnaps = std::move(fsnaps), phi_T, K](double b) {
        double u = -std::expm1(-b) / phi_T * K;
        return interp_fields(fsnaps, u);
    };
}

namespace {

// One application of the solution map: psi_lin + G[F(psi)].
Trajectory apply_map(const Trajectory& cur, const Trajectory& psi_lin,
                     const Nonlinearity& nl, const kernels::MassParams& mp,
                     const wave::WaveSolver& base,
                     const transform::QuadratureSpec& quad) {
    transform::SourceFn src = interpolated_nonlinearity(cur, nl);
    Trajectory g = transform::solve_source(src, mp, base, cur.times, quad);
    Trajectory next = psi_lin;
    for (std::size_t i = 0; i < next.fields.size(); ++i)
        next.fields[i] += g.fields[i];
    return next;
}

}  // namespace

Eigen::ArrayXd Nonlinearity::operator()(
    const Eigen::Ref<const Eigen::ArrayXd>& v) const {
    switch (kind) {
        case NonlinearityKind::PowerAbs:
            if (alpha <= 0.0)
                throw DomainError("nonlinearity exponent must be positive");
            return c * v.abs().pow(alpha) * v;
        case NonlinearityKind::OddCubic:
            return c * v.cube();
        case NonlinearityKind::Custom:
            if (!custom) throw DomainError("custom nonlinearity not set");
            return custom(v);
    }
    throw DomainError("unknown nonlinearity kind");
}

GammaBound expected_gamma(const kernels::MassParams& mp, double alpha,
                          const ProblemKind& problem) {
    if (alpha <= 0.0) throw DomainError("alpha must be positive");
    if (std::holds_alternative<CauchyProblem>(problem))
        return cauchy_bound(mp, alpha, std::get<CauchyProblem>(problem));
    return source_bound(mp, alpha, std::get<SourceProblem>(problem));
}

PicardResult picard_solve(const Eigen::Ref<const Eigen::ArrayXd>& psi0,
                          const Eigen::Ref<const Eigen::ArrayXd>& psi1,
                          const transform::SourceFn& f,
                          const Nonlinearity& nl,
                          const kernels::MassParams& mp,
                          const wave::WaveSolver& base, double gamma,
                          const std::vector<double>& times,
                          const PicardOptions& opt) {
    if (gamma < 0.0) throw DomainError("gamma must be nonnegative");
    if (opt.tol <= 0.0 || opt.max_iter < 1)
        throw DomainError("tolerance and iteration budget must be positive");
    require_phi_uniform(times);

    Trajectory psi_lin =
        transform::solve_linear_cauchy(psi0, psi1, mp, base, times, opt.quad);
    if (f) {
        Trajectory forced =
            transform::solve_source(f, mp, base, times, opt.quad);
        for (std::size_t i = 0; i < psi_lin.fields.size(); ++i)
            psi_lin.fields[i] += forced.fields[i];
    }

    PicardResult out;
    out.traj = psi_lin;
    int expanding = 0;
    for (int k = 0; k < opt.max_iter; ++k) {
        Trajectory next = apply_map(out.traj, psi_lin, nl, mp, base, opt.quad);
        double d = weighted_distance(next, out.traj, gamma, opt.s);
        if (!std::isfinite(d))
            throw NoContraction(
                "Picard iterates left the floating-point range; reduce the "
                "data size or the decay weight");
        if (!out.log.distances.empty() && out.log.distances.back() > 0.0) {
            double ratio = d / out.log.distances.back();
            out.log.ratios.push_back(ratio);
            expanding = ratio >= 1.0 ? expanding + 1 : 0;
            if (expanding >= 3)
                throw NoContraction(
                    "three consecutive non-contracting Picard steps; reduce "
                    "the data size or the decay weight");
        }
        out.log.distances.push_back(d);
        out.traj = std::move(next);
        if (d < opt.tol) {
            out.log.converged = true;
            break;
        }
    }
    out.log.final_distance = out.log.distances.back();
    out.log.weighted_norm = norms::weighted_sup_norm(out.traj, gamma, opt.s);
    return out;
}

double fixed_point_residual(const Trajectory& traj, const Trajectory& psi_lin,
                            const Nonlinearity& nl,
                            const kernels::MassParams& mp,
                            const wave::WaveSolver& base, double gamma,
                            double s, const transform::QuadratureSpec& quad) {
    if (traj.times != psi_lin.times)
        throw DomainError("trajectories must share the time grid");
    require_phi_uniform(traj.times);
    Trajectory mapped = apply_map(traj, psi_lin, nl, mp, base, quad);
    return weighted_distance(traj, mapped, gamma, s);
}

}  // namespace dskg::semilinear
