#pragma once

#include "minsurf/poly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace minsurf {

struct Rectangle {
    double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;
    double measure() const { return (u1 - u0) * (v1 - v0); }
};

// One-dimensional Gauss-Legendre rule, nodes already mapped into [a, b].
struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Abscissae and weights on [-1, 1], computed by Newton iteration on the
// Legendre polynomial to ~1e-15.
Rule1D gauss_legendre(int n);
Rule1D gauss_legendre(int n, double a, double b);

// Tensor-product Gauss-Legendre rule over a rectangle. All nodes are
// strictly interior, so boundary degeneracies (e.g. hemisphere poles)
// are never sampled.
class QuadratureRule {
public:
    QuadratureRule(int order, Rectangle domain);

    int order() const { return order_; }
    const Rectangle &domain() const { return domain_; }
    const std::vector<double> &nodes_u() const { return u_.nodes; }
    const std::vector<double> &nodes_v() const { return v_.nodes; }
    double weight(int i, int j) const { return u_.weights[i] * v_.weights[j]; }
    double weight_sum() const;

    // Weighted sum of f(u, v) over all nodes, in a fixed (u-major)
    // order so results are bit-for-bit reproducible. f may return
    // double or Poly; Poly fields integrate coefficient-wise.
    template <class F>
    auto integrate(F &&f) const
    {
        using Value = decltype(f(0.0, 0.0));
        Value acc = zero_of<Value>();
        for (std::size_t i = 0; i < u_.nodes.size(); ++i) {
            for (std::size_t j = 0; j < v_.nodes.size(); ++j) {
                Value val = f(u_.nodes[i], v_.nodes[j]);
                check_finite(val, u_.nodes[i], v_.nodes[j]);
                acc += val * (u_.weights[i] * v_.weights[j]);
            }
        }
        return acc;
    }

private:
    template <class Value>
    static Value zero_of();

    static void check_finite(double val, double u, double v);
    static void check_finite(const Poly &val, double u, double v);

    int order_;
    Rectangle domain_;
    Rule1D u_, v_;
};

// Integral of f over [a, b] with an n-point rule; for curve lengths.
template <class F>
double integrate_1d(const Rule1D &rule, F &&f)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * f(rule.nodes[i]);
    }
    return acc;
}

template <>
inline double QuadratureRule::zero_of<double>()
{
    return 0.0;
}

template <>
inline Poly QuadratureRule::zero_of<Poly>()
{
    return Poly{};
}

} // namespace minsurf
