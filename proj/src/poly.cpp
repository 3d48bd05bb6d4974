#include "minsurf/poly.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace minsurf {

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

Poly Poly::constant(double c)
{
    return Poly{{c}};
}

Poly Poly::variable()
{
    return Poly{{0.0, 1.0}};
}

double Poly::coeff(int k) const
{
    if (k < 0) {
        throw std::invalid_argument("Poly::coeff: negative index");
    }
    return k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : 0.0;
}

bool Poly::all_finite() const
{
    for (double c : coeffs_) {
        if (!std::isfinite(c)) {
            return false;
        }
    }
    return true;
}

double Poly::eval(double x) const
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

Poly Poly::derivative() const
{
    if (coeffs_.size() <= 1) {
        return Poly{};
    }
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * coeffs_[k];
    }
    return Poly{std::move(d)};
}

Poly &Poly::operator+=(const Poly &rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size(), 0.0);
    }
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
        coeffs_[k] += rhs.coeffs_[k];
    }
    trim();
    return *this;
}

Poly &Poly::operator-=(const Poly &rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size(), 0.0);
    }
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
        coeffs_[k] -= rhs.coeffs_[k];
    }
    trim();
    return *this;
}

Poly operator*(const Poly &a, const Poly &b)
{
    if (a.is_zero() || b.is_zero()) {
        return Poly{};
    }
    std::vector<double> prod(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Poly{std::move(prod)};
}

Poly &Poly::operator*=(const Poly &rhs)
{
    *this = *this * rhs;
    return *this;
}

Poly &Poly::operator*=(double s)
{
    for (double &c : coeffs_) {
        c *= s;
    }
    trim();
    return *this;
}

Poly Poly::operator-() const
{
    Poly neg = *this;
    for (double &c : neg.coeffs_) {
        c = -c;
    }
    return neg;
}

void Poly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0.0) {
        coeffs_.pop_back();
    }
}

} // namespace minsurf
