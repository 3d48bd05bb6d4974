#pragma once

#include "minsurf/poly.hpp"

#include <array>
#include <utility>
#include <vector>

namespace minsurf {

struct MinimizationResult {
    double t_min = 0.0;
    double value = 0.0;
    // Every candidate examined: stationary points of p inside the
    // bracket plus the endpoints and t = 0.
    std::vector<std::pair<double, double>> stationary_points;
    std::array<double, 2> bracket{-1.0, 1.0};
};

// All real roots of p in [lo, hi], sorted ascending, multiplicities
// collapsed. Sign-change bisection on a 1024-cell grid followed by a
// Newton polish to ~1e-12.
std::vector<double> real_roots(const Poly &p, double lo, double hi);

// Global minimum of p over [lo, hi]: evaluates p at every real root of
// p' in the interval, at both endpoints, and at t = 0 when it lies
// inside. Ties broken by smallest |t|. Throws on constant p.
MinimizationResult minimize(const Poly &p, double lo, double hi);

} // namespace minsurf
