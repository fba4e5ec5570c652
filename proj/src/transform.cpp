#include "dskg/transform.hpp"

#include <cmath>

#include "dskg/errors.hpp"
#include "dskg/parallel.hpp"
#include "dskg/quadrature.hpp"

namespace dskg::transform {

namespace {

void validate_times(const std::vector<double>& times) {
    if (times.empty()) throw DomainError("at least one output time required");
    if (times.front() < 0.0) throw DomainError("times must be nonnegative");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw DomainError("times must be strictly increasing");
}

void validate_quadrature(const QuadratureSpec& q) {
    if (q.n_s < 8 || q.n_b < 8 || q.n_r < 8)
        throw DomainError("quadrature needs at least 8 nodes per direction");
    if (q.endpoint_pad < 0.0 || q.endpoint_pad >= 0.5)
        throw DomainError("endpoint pad must lie in [0, 0.5)");
}

// Gauss-Legendre rule on [a, b] shrunk by the relative pad on both sides.
quadrature::QuadRule padded_rule(int n, double a, double b, double pad) {
    double inset = pad * (b - a);
    return quadrature::gauss_legendre(n, a + inset, b - inset);
}

Trajectory empty_like(const wave::WaveSolver& base,
                      const kernels::MassParams& mp,
                      const std::vector<double>& times) {
    Trajectory out;
    out.times = times;
    out.fields.resize(times.size());
    out.extent = base.extent();
    out.geom = base.geometry();
    out.mass = mp;
    return out;
}

double relative_change(const Trajectory& a, const Trajectory& b) {
    double scale = 0.0;
    for (const auto& f : b.fields) scale = std::max(scale, f.abs().maxCoeff());
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.fields.size(); ++i)
        worst = std::max(worst,
                         (a.fields[i] - b.fields[i]).abs().maxCoeff() / scale);
    return worst;
}

Trajectory linear_cauchy_impl(const Eigen::Ref<const Eigen::ArrayXd>& psi0,
                              const Eigen::Ref<const Eigen::ArrayXd>& psi1,
                              const kernels::MassParams& mp,
                              const wave::WaveSolver& base,
                              const std::vector<double>& times,
                              const QuadratureSpec& q) {
    const double n = mp.n;
    bool have0 = psi0.abs().maxCoeff() > 0.0;
    bool have1 = psi1.abs().maxCoeff() > 0.0;

    wave::WaveSolver v0 = base, v1 = base;
    double phi_max = -std::expm1(-times.back());
    if (have0) {
        v0.set_data(wave::DataKind::CosineData, psi0);
        v0.prepare(phi_max);
    }
    if (have1) {
        v1.set_data(wave::DataKind::CosineData, psi1);
        v1.prepare(phi_max);
    }

    Trajectory out = empty_like(base, mp, times);

    parallel::parallel_for(static_cast<int>(times.size()), [&](int i) {
        double t = times[i];
        double et = std::exp(-t);
        double phi = -std::expm1(-t);
        Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(base.size());
        if (have0) acc += std::exp(-0.5 * (n - 1.0) * t) * v0.at(phi);
        if (phi > 0.0 && (have0 || have1)) {
            // Integrate over z = phi*s in the variable xi = sqrt(1+e^{-t}-z).
            // The kernels depend on z through D = (1+e^{-t})^2 - z^2, which
            // reaches its minimum 4e^{-t} at z = phi; at large t the factor
            // D^{-3/2} inside K0 then forms a boundary layer of width e^{-t}
            // that defeats any fixed rule in s itself.  In xi the distance
            // factorizes as D = xi^2 (2 + 2e^{-t} - xi^2), so the integrand is
            // analytic on the closed interval with its nearest singularity at
            // xi = 0, a fixed relative distance sqrt(2e^{-t}) outside it, and
            // Gauss-Legendre converges geometrically again.
            double xi_lo = std::sqrt(2.0 * et);
            double xi_hi = std::sqrt(1.0 + et);
            auto rule = padded_rule(q.n_s, xi_lo, xi_hi, q.endpoint_pad);
            double damp = std::exp(-0.5 * n * t);
            for (int j = 0; j < q.n_s; ++j) {
                double xi = rule.nodes[j];
                double z = 1.0 + et - xi * xi;
                double wgt = damp * 2.0 * xi * rule.weights[j];
                if (have0) {
                    double k0 = kernels::kernel_K0(z, t, mp);
                    double k1 = kernels::kernel_K1(z, t, mp);
                    acc += wgt * (2.0 * k0 + n * k1) * v0.at(z);
                }
                if (have1) {
                    double k1 = kernels::kernel_K1(z, t, mp);
                    acc += wgt * 2.0 * k1 * v1.at(z);
                }
            }
        }
        out.fields[i] = acc;
    });
    return out;
}

Trajectory source_impl(const SourceFn& f, const kernels::MassParams& mp,
                       const wave::WaveSolver& base,
                       const std::vector<double>& times,
                       const QuadratureSpec& q) {
    const double n = mp.n;
    Trajectory out = empty_like(base, mp, times);

    parallel::parallel_for(static_cast<int>(times.size()), [&](int i) {
        double t = times[i];
        if (t == 0.0) {
            out.fields[i] = Eigen::ArrayXd::Zero(base.size());
            return;
        }
        double et = std::exp(-t);
        auto outer = padded_rule(q.n_b, 0.0, t, q.endpoint_pad);
        Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(base.size());
        for (int jb = 0; jb < q.n_b; ++jb) {
            double b = outer.nodes[jb];
            double eb = std::exp(-b);
            double r_top = eb - et;
            wave::WaveSolver vb = base;
            vb.set_data(wave::DataKind::CosineData, f(b));
            vb.prepare(r_top);
            // Same change of variable as the s-integral: E carries the
            // factor D^{-1/2-M} with D = (e^{-b}+e^{-t})^2 - r^2 bottoming
            // out at 4e^{-b-t} on the upper limit, so integrate in
            // xi = sqrt(e^{-b}+e^{-t}-r) where that distance factorizes.
            double xi_lo = std::sqrt(2.0 * et);
            double xi_hi = std::sqrt(eb + et);
            auto inner = padded_rule(q.n_r, xi_lo, xi_hi, q.endpoint_pad);
            Eigen::ArrayXd slab = Eigen::ArrayXd::Zero(base.size());
            for (int jr = 0; jr < q.n_r; ++jr) {
                double xi = inner.nodes[jr];
                double r = eb + et - xi * xi;
                slab += inner.weights[jr] * 2.0 * xi *
                        kernels::kernel_E(r, t, b, mp) * vb.at(r);
            }
            acc += outer.weights[jb] * std::exp(0.5 * n * b) * slab;
        }
        out.fields[i] = 2.0 * std::exp(-0.5 * n * t) * acc;
    });
    return out;
}

}  // namespace

std::vector<double> default_times(double T, int count) {
    if (!(T > 0.0)) throw DomainError("final time must be positive");
    if (count < 2) throw DomainError("need at least two output times");
    double phi_T = -std::expm1(-T);
    std::vector<double> out(count);
    out[0] = 0.0;
    for (int i = 1; i + 1 < count; ++i)
        out[i] = -std::log1p(-phi_T * i / (count - 1));
    out[count - 1] = T;
    return out;
}

Trajectory solve_linear_cauchy(const Eigen::Ref<const Eigen::ArrayXd>& psi0,
                               const Eigen::Ref<const Eigen::ArrayXd>& psi1,
                               const kernels::MassParams& mp,
                               const wave::WaveSolver& base,
                               const std::vector<double>& times,
                               const QuadratureSpec& q) {
    validate_times(times);
    validate_quadrature(q);
    if (psi0.size() != base.size() || psi1.size() != base.size())
        throw DomainError("data samples must match the grid");
    Trajectory coarse = linear_cauchy_impl(psi0, psi1, mp, base, times, q);
    if (q.self_check) {
        QuadratureSpec fine_q = q;
        fine_q.self_check = false;
        fine_q.n_s *= 2;
        Trajectory fine = linear_cauchy_impl(psi0, psi1, mp, base, times, fine_q);
        if (relative_change(coarse, fine) > 1e-6)
            throw QuadratureUnderResolved(
                "data integral not converged: doubling n_s moved the output");
    }
    return coarse;
}

Trajectory solve_source(const SourceFn& f, const kernels::MassParams& mp,
                        const wave::WaveSolver& base,
                        const std::vector<double>& times,
                        const QuadratureSpec& q) {
    validate_times(times);
    validate_quadrature(q);
    if (!f) throw DomainError("source function required");
    Trajectory coarse = source_impl(f, mp, base, times, q);
    if (q.self_check) {
        QuadratureSpec fine_q = q;
        fine_q.self_check = false;
        fine_q.n_b *= 2;
        fine_q.n_r *= 2;
        Trajectory fine = source_impl(f, mp, base, times, fine_q);
        if (relative_change(coarse, fine) > 1e-6)
            throw QuadratureUnderResolved(
                "source integral not converged: doubling nodes moved the output");
    }
    return coarse;
}

Trajectory solve_u_form(const Eigen::Ref<const Eigen::ArrayXd>& u0,
                        const Eigen::Ref<const Eigen::ArrayXd>& u1,
                        const kernels::MassParams& mp,
                        const wave::WaveSolver& base,
                        const std::vector<double>& times,
                        const QuadratureSpec& q, const SourceFn& f) {
    // u = e^{nt/2} psi maps the u-problem onto the damped form: data become
    // psi0 = u0, psi1 = u1 - (n/2) u0, the source picks up e^{-nb/2}.
    Eigen::ArrayXd psi1 = u1 - 0.5 * mp.n * u0;
    Trajectory out = solve_linear_cauchy(u0, psi1, mp, base, times, q);
    if (f) {
        SourceFn damped = [&f, &mp](double b) {
            return (std::exp(-0.5 * mp.n * b) * f(b)).eval();
        };
        Trajectory forced = solve_source(damped, mp, base, times, q);
        for (std::size_t i = 0; i < out.fields.size(); ++i)
            out.fields[i] += forced.fields[i];
    }
    for (std::size_t i = 0; i < out.fields.size(); ++i)
        out.fields[i] *= std::exp(0.5 * mp.n * out.times[i]);
    return out;
}

Eigen::ArrayXd pde_residual(const Trajectory& traj, const SourceFn& f,
                            const wave::WaveSolver& base) {
    std::size_t K = traj.times.size();
    if (K < 5)
        throw InsufficientSamples("residual check needs at least 5 times");
    double dt = traj.times[1] - traj.times[0];
    for (std::size_t i = 1; i < K; ++i)
        if (std::abs(traj.times[i] - traj.times[i - 1] - dt) > 1e-9 * dt)
            throw InsufficientSamples("residual check needs uniform spacing");

    const double n = traj.mass.n, m2 = traj.mass.m * traj.mass.m;
    Eigen::ArrayXd out(K - 2);
    for (std::size_t i = 1; i + 1 < K; ++i) {
        double t = traj.times[i];
        Eigen::ArrayXd psi_tt =
            (traj.fields[i + 1] - 2.0 * traj.fields[i] + traj.fields[i - 1]) /
            (dt * dt);
        Eigen::ArrayXd psi_t =
            (traj.fields[i + 1] - traj.fields[i - 1]) / (2.0 * dt);
        Eigen::ArrayXd res = psi_tt + n * psi_t -
                             std::exp(-2.0 * t) * base.apply_operator(traj.fields[i]) +
                             m2 * traj.fields[i];
        if (f) res -= f(t);
        out[i - 1] = res.abs().maxCoeff();
    }
    return out;
}

}  // namespace dskg::transform
