#include "minsurf/polyopt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace minsurf {

namespace {

constexpr int kGridCells = 1024;

double refine_root(const Poly &p, const Poly &dp, double a, double b)
{
    double fa = p.eval(a);
    double fb = p.eval(b);
    if (fa == 0.0) {
        return a;
    }
    if (fb == 0.0) {
        return b;
    }
    // Bisection until the bracket is tight enough for Newton.
    for (int iter = 0; iter < 80 && (b - a) > 1e-9; ++iter) {
        const double mid = 0.5 * (a + b);
        const double fm = p.eval(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fa < 0.0) != (fm < 0.0)) {
            b = mid;
            fb = fm;
        } else {
            a = mid;
            fa = fm;
        }
    }
    double x = 0.5 * (a + b);
    for (int iter = 0; iter < 60; ++iter) {
        const double d = dp.eval(x);
        if (d == 0.0) {
            break;
        }
        const double step = p.eval(x) / d;
        const double next = x - step;
        if (next < a || next > b) {
            break;
        }
        x = next;
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) {
            break;
        }
    }
    return x;
}

} // namespace

std::vector<double> real_roots(const Poly &p, double lo, double hi)
{
    if (p.is_zero()) {
        throw std::invalid_argument("real_roots: zero polynomial");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("real_roots: empty interval");
    }
    if (p.degree() == 0) {
        return {};
    }

    const Poly dp = p.derivative();
    std::vector<double> roots;
    const double h = (hi - lo) / kGridCells;
    double xa = lo;
    double fa = p.eval(xa);
    for (int cell = 0; cell < kGridCells; ++cell) {
        const double xb = (cell + 1 == kGridCells) ? hi : lo + (cell + 1) * h;
        const double fb = p.eval(xb);
        if (fa == 0.0) {
            roots.push_back(xa);
        } else if ((fa < 0.0) != (fb < 0.0)) {
            roots.push_back(refine_root(p, dp, xa, xb));
        }
        xa = xb;
        fa = fb;
    }
    if (fa == 0.0) {
        roots.push_back(hi);
    }

    std::sort(roots.begin(), roots.end());
    // Collapse duplicates from roots landing on cell edges.
    std::vector<double> unique_roots;
    const double tol = 1e-10 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    for (double r : roots) {
        if (unique_roots.empty() || r - unique_roots.back() > tol) {
            unique_roots.push_back(r);
        }
    }
    return unique_roots;
}

MinimizationResult minimize(const Poly &p, double lo, double hi)
{
    if (p.degree() < 1) {
        throw std::invalid_argument("minimize: polynomial is constant");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("minimize: empty interval");
    }

    MinimizationResult res;
    res.bracket = {lo, hi};

    std::vector<double> candidates = real_roots(p.derivative(), lo, hi);
    candidates.push_back(lo);
    candidates.push_back(hi);
    if (lo < 0.0 && 0.0 < hi) {
        candidates.push_back(0.0);
    }

    bool first = true;
    for (double t : candidates) {
        const double val = p.eval(t);
        res.stationary_points.emplace_back(t, val);
        const bool better =
            first || val < res.value ||
            (val == res.value && std::abs(t) < std::abs(res.t_min));
        if (better) {
            res.t_min = t;
            res.value = val;
            first = false;
        }
    }
    return res;
}

} // namespace minsurf
