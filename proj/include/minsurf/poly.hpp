#pragma once

#include <vector>

namespace minsurf {

// Univariate real polynomial. coeffs()[k] multiplies x^k. Trailing zero
// coefficients are trimmed on construction and after every operation, so
// degree() is structural: the zero polynomial has an empty coefficient
// list and degree -1. Only exact zeros are trimmed; small coefficients
// are kept as-is.
//
// Used both for polynomials in the variational parameter t and for
// polynomials in a curve parameter u. Immutable in spirit: all operations
// return new values.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs);

    static Poly constant(double c);
    // The polynomial "x" (or "t"): coefficients {0, 1}.
    static Poly variable();

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    // Coefficient of x^k; zero beyond the degree.
    double coeff(int k) const;
    const std::vector<double> &coeffs() const { return coeffs_; }

    bool all_finite() const;

    // Horner evaluation.
    double eval(double x) const;
    Poly derivative() const;

    Poly &operator+=(const Poly &rhs);
    Poly &operator-=(const Poly &rhs);
    Poly &operator*=(const Poly &rhs);
    Poly &operator*=(double s);

    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator*(const Poly &a, const Poly &b);
    friend Poly operator*(Poly a, double s) { return a *= s; }
    friend Poly operator*(double s, Poly a) { return a *= s; }
    Poly operator-() const;

    bool operator==(const Poly &rhs) const { return coeffs_ == rhs.coeffs_; }

private:
    void trim();
    std::vector<double> coeffs_;
};

} // namespace minsurf
