#include "dskg/quadrature.hpp"

#include <cmath>
#include <vector>

#include "dskg/errors.hpp"

namespace dskg::quadrature {

QuadRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw DomainError("quadrature order must be positive");
    if (!(a < b)) throw DomainError("quadrature interval must have a < b");
    QuadRule rule{Eigen::ArrayXd(n), Eigen::ArrayXd(n)};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const int half_n = (n + 1) / 2;
    for (int k = 0; k < half_n; ++k) {
        // Tricomi-style initial guess for the k-th root of P_n
        double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // evaluate P_n and P_n' by the three-term recurrence
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[k] = mid - half * x;  // roots come out descending in x
        rule.weights[k] = half * w;
        rule.nodes[n - 1 - k] = mid + half * x;
        rule.weights[n - 1 - k] = half * w;
    }
    return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_level) {
    if (!(a < b)) throw DomainError("quadrature interval must have a < b");
    if (tol <= 0.0) throw DomainError("quadrature tolerance must be positive");

    const double half = 0.5 * (b - a);
    const double t_max = 4.0;

    // Node at trap parameter t: abscissa tanh((pi/2) sinh t). We carry the
    // distance factor p = 1 - tanh(.) in a cancellation-free form so that
    // abscissae hug the endpoints to full precision.
    auto sample = [&](double t) -> double {
        double u = M_PI_2 * std::sinh(t);
        double p = 2.0 / (1.0 + std::exp(2.0 * u));  // = 1 - tanh(u)
        double w = M_PI_2 * std::cosh(t) * p * (2.0 - p) * half;
        double acc = 0.0;
        double x_hi = b - half * p;  // right-side node
        double x_lo = a + half * p;  // mirrored left-side node
        if (x_hi > a && x_hi < b) {
            double v = f(x_hi);
            if (std::isfinite(v)) acc += w * v;
        }
        if (t != 0.0 && x_lo > a && x_lo < b) {
            double v = f(x_lo);
            if (std::isfinite(v)) acc += w * v;
        }
        return acc;
    };

    double h = 1.0;
    double s0 = sample(0.0);
    for (int k = 1; k * h <= t_max; ++k) s0 += sample(k * h);
    double prev = h * s0, est = prev;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double s = 0.0;
        for (int k = 1; k * h <= t_max; k += 2) s += sample(k * h);
        est = 0.5 * prev + h * s;
        if (std::abs(est - prev) <= tol * (1.0 + std::abs(est)) && level >= 2)
            return est;
        prev = est;
    }
    throw QuadratureFailure("tanh-sinh refinement exhausted without converging");
}

double integrate_bisect(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
    if (!(a < b)) throw DomainError("quadrature interval must have a < b");
    if (tol <= 0.0) throw DomainError("quadrature tolerance must be positive");

    const QuadRule coarse = gauss_legendre(12);
    const QuadRule fine = gauss_legendre(24);
    auto panel = [&](const QuadRule& rule, double lo, double hi) {
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double acc = 0.0;
        for (Eigen::Index i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
        return half * acc;
    };

    // first sweep fixes the absolute error budget, split across panels in
    // proportion to their length
    double budget = tol * (1.0 + std::abs(panel(fine, a, b)));
    struct Panel {
        double lo, hi;
        int depth;
    };
    std::vector<Panel> stack{{a, b, 0}};
    double total = 0.0;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double q1 = panel(coarse, p.lo, p.hi);
        double q2 = panel(fine, p.lo, p.hi);
        if (std::abs(q2 - q1) <= budget * (p.hi - p.lo) / (b - a)) {
            total += q2;
            continue;
        }
        if (p.depth >= max_depth)
            throw QuadratureFailure(
                "bisection depth exhausted without converging");
        double mid = 0.5 * (p.lo + p.hi);
        stack.push_back({p.lo, mid, p.depth + 1});
        stack.push_back({mid, p.hi, p.depth + 1});
    }
    return total;
}

}  // namespace dskg::quadrature
