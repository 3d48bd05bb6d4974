#include "minsurf/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace minsurf {

double poly_integral_01(const Poly &p)
{
    double acc = 0.0;
    const auto &c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        acc += c[k] / static_cast<double>(k + 1);
    }
    return acc;
}

CurveStepResult curve_step(const Poly &y)
{
    // m = u (1 - u) y''
    const Poly ypp = y.derivative().derivative();
    const Poly blend{{0.0, 1.0, -1.0}};
    const Poly m = blend * ypp;
    if (m.is_zero()) {
        return {y, 0.0};
    }

    // Dirichlet energy of y + t m: quadratic a t^2 + b t + c.
    const Poly yp = y.derivative();
    const Poly mp = m.derivative();
    const double a = poly_integral_01(mp * mp);
    const double b = 2.0 * poly_integral_01(yp * mp);
    if (a <= 0.0) {
        throw std::runtime_error("curve_step: energy quadratic is not convex");
    }
    const double t = -b / (2.0 * a);
    return {y + t * m, t};
}

double curve_length(const Poly &y, const Rule1D &rule)
{
    const Poly yp = y.derivative();
    return integrate_1d(rule, [&](double u) {
        const double s = yp.eval(u);
        return std::sqrt(1.0 + s * s);
    });
}

std::vector<CurveRecord> curve_iterate(const Poly &y0, int steps, int quad_order)
{
    if (steps < 1) {
        throw std::invalid_argument("curve_iterate: steps must be >= 1");
    }
    if (quad_order < 32) {
        throw std::invalid_argument("curve_iterate: quadrature order must be >= 32");
    }
    const Rule1D rule = gauss_legendre(quad_order, 0.0, 1.0);

    std::vector<CurveRecord> records;
    Poly y = y0;
    const double len0 = curve_length(y, rule);
    records.push_back({0, std::nullopt, len0, std::nullopt, y});

    // Straight-line excess; zero when the start is already the segment.
    const double excess = len0 - 1.0;
    double prev_len = len0;
    for (int n = 1; n <= steps; ++n) {
        const CurveStepResult step = curve_step(y);
        y = step.y;
        const double len = curve_length(y, rule);
        std::optional<double> pct;
        if (excess > 0.0) {
            pct = 100.0 * (prev_len - len) / excess;
        } else {
            // Already at the straight line; nothing left to reduce.
            pct = 0.0;
        }
        records.push_back({n, step.t_min, len, pct, y});
        prev_len = len;
    }
    return records;
}

} // namespace minsurf
