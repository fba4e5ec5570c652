#include "dskg/norms.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "dskg/errors.hpp"
#include "dskg/fft.hpp"

namespace dskg::norms {

namespace {

// Working representation: plain periodic samples plus their period. Radial
// fields enter through the odd extension of rho * u over [-L, L).
struct Flat {
    Eigen::ArrayXd values;
    double period;
};

Flat flatten(const Field& u) {
    if (!(u.extent > 0.0)) throw DomainError("field extent must be positive");
    if (u.geom == wave::Geometry::Periodic1D)
        return {u.values, 2.0 * u.extent};
    int N = static_cast<int>(u.values.size());
    double h = u.extent / N;
    Eigen::ArrayXd w = Eigen::ArrayXd::Zero(2 * N);
    for (int j = 1; j < N; ++j) {
        double v = (j * h) * u.values[j - 1];
        w[N + j] = v;
        w[N - j] = -v;
    }
    return {std::move(w), 2.0 * u.extent};
}

// Smooth cutoff: 1 on |x| <= 1, 0 on |x| >= 2.
double eta(double x) {
    x = std::abs(x);
    if (x <= 1.0) return 1.0;
    if (x >= 2.0) return 0.0;
    auto rho = [](double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; };
    double up = rho(2.0 - x);
    return up / (up + rho(x - 1.0));
}

// Dyadic bump: supported in 1/2 < |x| < 2, telescoping to a partition of
// unity together with the j = 0 low-pass eta.
double dyadic_phi(double x) { return eta(x) - eta(2.0 * x); }

double block_pnorm(const Eigen::ArrayXd& block, double p, double h) {
    if (std::isinf(p)) return block.abs().maxCoeff();
    return std::pow((block.abs().pow(p) * h).sum(), 1.0 / p);
}

}  // namespace

double sobolev_norm(const Field& u, double s) {
    if (s < 0.0) throw DomainError("Sobolev index must be nonnegative");
    Flat f = flatten(u);
    Eigen::Index N = f.values.size();
    Eigen::VectorXcd spec = fft::forward(f.values) / static_cast<double>(N);
    Eigen::ArrayXd xi = fft::frequencies(static_cast<int>(N), f.period);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < N; ++k)
        acc += std::pow(1.0 + xi[k] * xi[k], s) * std::norm(spec[k]);
    return std::sqrt(f.period * acc);
}

double besov_norm(const Field& u, const NormSpec& spec) {
    if (spec.s < 0.0) throw DomainError("Besov index must be nonnegative");
    if (spec.p < 1.0 || spec.q < 1.0)
        throw DomainError("Besov integrability indices must be at least 1");
    Flat f = flatten(u);
    Eigen::Index N = f.values.size();
    double h = f.period / static_cast<double>(N);
    Eigen::VectorXcd uhat = fft::forward(f.values);
    Eigen::ArrayXd xi = fft::frequencies(static_cast<int>(N), f.period);

    double xi_max = xi.abs().maxCoeff();
    int j_top = std::max(1, static_cast<int>(std::ceil(std::log2(xi_max))) + 1);

    double acc = 0.0, top = 0.0;
    for (int j = 0; j <= j_top; ++j) {
        Eigen::VectorXcd masked(N);
        for (Eigen::Index k = 0; k < N; ++k) {
            double m = (j == 0) ? eta(xi[k])
                                : dyadic_phi(std::ldexp(std::abs(xi[k]), -j));
            masked[k] = m * uhat[k];
        }
        double bn = block_pnorm(fft::inverse_real(masked), spec.p, h);
        double weighted = std::pow(2.0, j * spec.s) * bn;
        if (std::isinf(spec.q))
            top = std::max(top, weighted);
        else
            acc += std::pow(weighted, spec.q);
    }
    return std::isinf(spec.q) ? top : std::pow(acc, 1.0 / spec.q);
}

double weighted_sup_norm(const Trajectory& traj, double gamma, double s) {
    if (traj.times.empty()) throw DomainError("trajectory is empty");
    double best = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        double v = std::exp(gamma * traj.times[i]) *
                   sobolev_norm(traj.field_at(i), s);
        best = std::max(best, v);
    }
    return best;
}

DecayFit fit_decay_rate(const std::vector<double>& times,
                        const std::vector<double>& norm_values, double t_a,
                        double t_b, bool log_corrected) {
    if (times.size() != norm_values.size())
        throw DomainError("times and norms must align");
    if (!(t_b > t_a)) throw DomainError("fit window must have t_b > t_a");
    std::vector<double> t, y;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_a || times[i] > t_b) continue;
        if (!(norm_values[i] > 0.0))
            throw DomainError("norms must be positive inside the fit window");
        t.push_back(times[i]);
        y.push_back(-std::log(norm_values[i]));
    }
    int n = static_cast<int>(t.size());
    if (n < 8)
        throw InsufficientSamples("decay fit needs at least 8 samples in window");

    int cols = log_corrected ? 3 : 2;
    Eigen::MatrixXd X(n, cols);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = t[i];
        if (log_corrected) X(i, 1) = std::log1p(t[i]);
        X(i, cols - 1) = 1.0;
        b[i] = y[i];
    }
    Eigen::VectorXd coef = (X.transpose() * X).ldlt().solve(X.transpose() * b);

    Eigen::VectorXd resid = b - X * coef;
    double mean = b.mean();
    double ss_tot = (b.array() - mean).square().sum();
    double ss_res = resid.squaredNorm();

    DecayFit fit;
    fit.t_a = t.front();
    fit.t_b = t.back();
    fit.gamma = coef[0];
    fit.beta = log_corrected ? coef[1] : 0.0;
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.log_corrected = log_corrected;
    fit.samples = n;
    return fit;
}

}  // namespace dskg::norms
