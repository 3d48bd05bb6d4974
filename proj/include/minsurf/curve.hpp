#pragma once

#include "minsurf/poly.hpp"
#include "minsurf/quadrature.hpp"

#include <optional>
#include <vector>

namespace minsurf {

// One-dimensional analogue of the surface algorithm: a planar graph
// curve (u, y(u)) with fixed endpoints is shortened by the ansatz
//   y_{n+1}(u, t) = y_n(u) + t u(1-u) y_n''(u),
// with t chosen to minimize the Dirichlet energy of the update,
//   int_0^1 (y_{n+1}')^2 du,
// which is an upward parabola in t with a closed-form minimum. The
// factor u(1-u) vanishes at both ends, so the endpoints never move.

struct CurveRecord {
    int n = 0;
    std::optional<double> t_min;      // absent for the initial curve
    double length = 0.0;              // ell_n
    std::optional<double> length_pct; // 100 (ell_{n-1} - ell_n) / (ell_0 - 1)
    Poly y;                           // the curve after this step
};

struct CurveStepResult {
    Poly y;
    double t_min = 0.0;
};

// Exact integral of p over [0, 1].
double poly_integral_01(const Poly &p);

// One variational step. A curve with y'' == 0 is already stationary and
// comes back unchanged with t = 0.
CurveStepResult curve_step(const Poly &y);

// Arc length int_0^1 sqrt(1 + y'^2) du by Gauss-Legendre.
double curve_length(const Poly &y, const Rule1D &rule);

// Repeated steps from y0; records include the initial curve at n = 0.
std::vector<CurveRecord> curve_iterate(const Poly &y0, int steps,
                                       int quad_order = 64);

} // namespace minsurf
