#pragma once

#include "minsurf/poly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace minsurf {

template <class R>
struct ring_traits;

template <>
struct ring_traits<double> {
    static double zero() { return 0.0; }
    static double from_double(double x) { return x; }
    static bool finite(double x) { return std::isfinite(x); }
};

template <>
struct ring_traits<Poly> {
    static Poly zero() { return Poly{}; }
    static Poly from_double(double x) { return Poly::constant(x); }
    static bool finite(const Poly &p) { return p.all_finite(); }
};

// Truncated bivariate Taylor expansion of a scalar in (u, v) over a
// coefficient ring R (double or Poly). coeff(i, j) stores the Taylor
// coefficient d^{i+j} f / du^i dv^j / (i! j!) at the expansion point,
// for all i + j <= order. Storage is dense triangular, row i holding
// j = 0 .. order - i.
//
// Jets of the same ring combine with +, -, * (truncated Cauchy product);
// order mismatch is a structural error. sin/cos are defined for the real
// ring only: the algorithm never forms transcendentals of t-dependent
// arguments, so the Poly ring needs no composition rule.
template <class R>
class Jet {
public:
    explicit Jet(int order)
        : order_(order), coeffs_(size_for(order), ring_traits<R>::zero())
    {
        if (order < 0) {
            throw std::invalid_argument("Jet: order must be >= 0");
        }
    }

    static Jet constant(R value, int order)
    {
        Jet j(order);
        j.at(0, 0) = std::move(value);
        return j;
    }

    // Jet of the coordinate function u (resp. v) at the given point.
    static Jet seed_u(double value, int order)
    {
        Jet j(order);
        j.at(0, 0) = ring_traits<R>::from_double(value);
        if (order >= 1) {
            j.at(1, 0) = ring_traits<R>::from_double(1.0);
        }
        return j;
    }

    static Jet seed_v(double value, int order)
    {
        Jet j(order);
        j.at(0, 0) = ring_traits<R>::from_double(value);
        if (order >= 1) {
            j.at(0, 1) = ring_traits<R>::from_double(1.0);
        }
        return j;
    }

    int order() const { return order_; }

    R &at(int i, int j) { return coeffs_[index(i, j)]; }
    const R &at(int i, int j) const { return coeffs_[index(i, j)]; }
    const R &value() const { return coeffs_[0]; }

    // The partial derivative d^{i+j} f / du^i dv^j (Taylor coefficient
    // times i! j!).
    R extract(int i, int j) const
    {
        R c = at(i, j);
        double fact = 1.0;
        for (int k = 2; k <= i; ++k) {
            fact *= k;
        }
        for (int k = 2; k <= j; ++k) {
            fact *= k;
        }
        return c * fact;
    }

    Jet truncated(int new_order) const
    {
        if (new_order > order_) {
            throw std::invalid_argument("Jet::truncated: cannot extend order");
        }
        Jet out(new_order);
        for (int i = 0; i <= new_order; ++i) {
            for (int j = 0; j + i <= new_order; ++j) {
                out.at(i, j) = at(i, j);
            }
        }
        return out;
    }

    // Jet of df/du, one order lower.
    Jet du() const
    {
        require_order(1, "Jet::du");
        Jet out(order_ - 1);
        for (int i = 0; i <= order_ - 1; ++i) {
            for (int j = 0; j + i <= order_ - 1; ++j) {
                out.at(i, j) = at(i + 1, j) * static_cast<double>(i + 1);
            }
        }
        return out;
    }

    Jet dv() const
    {
        require_order(1, "Jet::dv");
        Jet out(order_ - 1);
        for (int i = 0; i <= order_ - 1; ++i) {
            for (int j = 0; j + i <= order_ - 1; ++j) {
                out.at(i, j) = at(i, j + 1) * static_cast<double>(j + 1);
            }
        }
        return out;
    }

    Jet &operator+=(const Jet &rhs)
    {
        check_same_order(rhs);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            coeffs_[k] += rhs.coeffs_[k];
        }
        return *this;
    }

    Jet &operator-=(const Jet &rhs)
    {
        check_same_order(rhs);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            coeffs_[k] -= rhs.coeffs_[k];
        }
        return *this;
    }

    friend Jet operator+(Jet a, const Jet &b) { return a += b; }
    friend Jet operator-(Jet a, const Jet &b) { return a -= b; }

    // Truncated Cauchy product over the triangular index set.
    friend Jet operator*(const Jet &a, const Jet &b)
    {
        a.check_same_order(b);
        const int K = a.order_;
        Jet out(K);
        for (int i = 0; i <= K; ++i) {
            for (int j = 0; j + i <= K; ++j) {
                R acc = ring_traits<R>::zero();
                for (int p = 0; p <= i; ++p) {
                    for (int q = 0; q <= j; ++q) {
                        acc += a.at(p, q) * b.at(i - p, j - q);
                    }
                }
                out.at(i, j) = std::move(acc);
            }
        }
        return out;
    }

    Jet &operator*=(const Jet &rhs)
    {
        *this = *this * rhs;
        return *this;
    }

    Jet operator-() const
    {
        Jet out(order_);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            out.coeffs_[k] = -coeffs_[k];
        }
        return out;
    }

    Jet &operator*=(double s)
    {
        for (R &c : coeffs_) {
            c *= s;
        }
        return *this;
    }

    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }

    bool all_finite() const
    {
        for (const R &c : coeffs_) {
            if (!ring_traits<R>::finite(c)) {
                return false;
            }
        }
        return true;
    }

private:
    static int size_for(int order) { return (order + 1) * (order + 2) / 2; }

    // Row-major triangular layout: row i holds j = 0 .. order - i.
    int index(int i, int j) const
    {
        if (i < 0 || j < 0 || i + j > order_) {
            throw std::out_of_range("Jet: index beyond truncation order");
        }
        return i * (order_ + 1) - i * (i - 1) / 2 + j;
    }

    void check_same_order(const Jet &rhs) const
    {
        if (order_ != rhs.order_) {
            throw std::invalid_argument("Jet: order mismatch");
        }
    }

    void require_order(int k, const char *who) const
    {
        if (order_ < k) {
            throw std::invalid_argument(std::string(who) + ": order too low");
        }
    }

    int order_;
    std::vector<R> coeffs_;
};

namespace detail {

// Composition f(a) for an analytic f given the cycle of its derivatives
// at a.value(): derivs[m] = f^(m)(a0). Truncated at the jet order.
inline Jet<double> compose_analytic(const Jet<double> &a,
                                    const std::vector<double> &derivs)
{
    const int K = a.order();
    Jet<double> h = a;
    h.at(0, 0) = 0.0;

    Jet<double> result = Jet<double>::constant(derivs[0], K);
    Jet<double> h_pow = Jet<double>::constant(1.0, K);
    double factorial = 1.0;
    for (int m = 1; m <= K; ++m) {
        h_pow = h_pow * h;
        factorial *= m;
        result += h_pow * (derivs[m] / factorial);
    }
    return result;
}

} // namespace detail

inline Jet<double> sin(const Jet<double> &a)
{
    const double s = std::sin(a.value());
    const double c = std::cos(a.value());
    std::vector<double> derivs(a.order() + 1);
    const double cycle[4] = {s, c, -s, -c};
    for (int m = 0; m <= a.order(); ++m) {
        derivs[m] = cycle[m % 4];
    }
    return detail::compose_analytic(a, derivs);
}

inline Jet<double> cos(const Jet<double> &a)
{
    const double s = std::sin(a.value());
    const double c = std::cos(a.value());
    std::vector<double> derivs(a.order() + 1);
    const double cycle[4] = {c, -s, -c, s};
    for (int m = 0; m <= a.order(); ++m) {
        derivs[m] = cycle[m % 4];
    }
    return detail::compose_analytic(a, derivs);
}

// Lift a real jet into the Poly ring (all coefficients constant in t).
inline Jet<Poly> promote(const Jet<double> &a)
{
    Jet<Poly> out(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        for (int j = 0; j + i <= a.order(); ++j) {
            out.at(i, j) = Poly::constant(a.at(i, j));
        }
    }
    return out;
}

// Substitute a numeric t into every coefficient of a Poly-ring jet.
inline Jet<double> eval_at(const Jet<Poly> &a, double t)
{
    Jet<double> out(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        for (int j = 0; j + i <= a.order(); ++j) {
            out.at(i, j) = a.at(i, j).eval(t);
        }
    }
    return out;
}

} // namespace minsurf
