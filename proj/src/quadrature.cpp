#include "minsurf/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace minsurf {

Rule1D gauss_legendre(int n)
{
    if (n < 1) {
        throw std::invalid_argument("gauss_legendre: order must be >= 1");
    }
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    // Nodes come in +/- pairs; solve for the non-negative half.
    const int half = (n + 1) / 2;
    for (int k = 0; k < half; ++k) {
        // Chebyshev-based initial guess for the k-th root (descending).
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence: p holds P_n(x), pm1 holds P_{n-1}(x).
            double pm1 = 0.0;
            double p = 1.0;
            for (int m = 0; m < n; ++m) {
                const double pm2 = pm1;
                pm1 = p;
                p = ((2.0 * m + 1.0) * x * pm1 - m * pm2) / (m + 1.0);
            }
            dp = n * (x * p - pm1) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - k] = x;
        rule.weights[n - 1 - k] = w;
        rule.nodes[k] = -x;
        rule.weights[k] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[half - 1] = 0.0;
    }
    return rule;
}

Rule1D gauss_legendre(int n, double a, double b)
{
    if (!(a < b)) {
        throw std::invalid_argument("gauss_legendre: degenerate interval");
    }
    Rule1D rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + hw * rule.nodes[i];
        rule.weights[i] *= hw;
    }
    return rule;
}

QuadratureRule::QuadratureRule(int order, Rectangle domain)
    : order_(order), domain_(domain)
{
    if (!(domain.u0 < domain.u1) || !(domain.v0 < domain.v1)) {
        throw std::invalid_argument("QuadratureRule: degenerate domain");
    }
    u_ = gauss_legendre(order, domain.u0, domain.u1);
    v_ = gauss_legendre(order, domain.v0, domain.v1);
}

double QuadratureRule::weight_sum() const
{
    double acc = 0.0;
    for (double wu : u_.weights) {
        for (double wv : v_.weights) {
            acc += wu * wv;
        }
    }
    return acc;
}

void QuadratureRule::check_finite(double val, double u, double v)
{
    if (!std::isfinite(val)) {
        throw std::runtime_error("integrate: non-finite field value at node (u=" +
                                 std::to_string(u) + ", v=" + std::to_string(v) + ")");
    }
}

void QuadratureRule::check_finite(const Poly &val, double u, double v)
{
    if (!val.all_finite()) {
        throw std::runtime_error("integrate: non-finite field value at node (u=" +
                                 std::to_string(u) + ", v=" + std::to_string(v) + ")");
    }
}

} // namespace minsurf
