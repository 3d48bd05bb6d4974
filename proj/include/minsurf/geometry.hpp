#pragma once

#include "minsurf/jet.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace minsurf {

// The three components of a surface point x(u, v), expanded as jets of
// equal order at a parameter node.
template <class R>
struct SurfaceJets {
    Jet<R> x, y, z;

    int order() const { return x.order(); }

    void check_consistent() const
    {
        if (x.order() != y.order() || x.order() != z.order()) {
            throw std::invalid_argument("SurfaceJets: component order mismatch");
        }
    }
};

// First and second fundamental magnitudes in the numerator convention:
// e, f, g are second derivatives dotted with the *unnormalized* normal
// x_u x x_v. No division or square root enters, so everything stays
// polynomial in the variational parameter.
template <class R>
struct Magnitudes {
    Jet<R> E, F, G, e, f, g;
};

namespace detail {

template <class R>
using Vec3Jet = std::array<Jet<R>, 3>;

template <class R>
Jet<R> dot(const Vec3Jet<R> &a, const Vec3Jet<R> &b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class R>
Vec3Jet<R> cross(const Vec3Jet<R> &a, const Vec3Jet<R> &b)
{
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

template <class R>
Vec3Jet<R> truncated(const Vec3Jet<R> &a, int order)
{
    return {a[0].truncated(order), a[1].truncated(order), a[2].truncated(order)};
}

} // namespace detail

// Unnormalized normal x_u x x_v as jets, one order below the input.
template <class R>
std::array<Jet<R>, 3> normal_numerator_jets(const SurfaceJets<R> &p)
{
    p.check_consistent();
    if (p.order() < 1) {
        throw std::invalid_argument("normal_numerator: jet order must be >= 1");
    }
    detail::Vec3Jet<R> xu{p.x.du(), p.y.du(), p.z.du()};
    detail::Vec3Jet<R> xv{p.x.dv(), p.y.dv(), p.z.dv()};
    return detail::cross(xu, xv);
}

template <class R>
std::array<R, 3> normal_numerator(const SurfaceJets<R> &p)
{
    auto n = normal_numerator_jets(p);
    return {n[0].value(), n[1].value(), n[2].value()};
}

// E = x_u.x_u, F = x_u.x_v, G = x_v.x_v; e = x_uu.N, f = x_uv.N,
// g = x_vv.N with N = x_u x x_v. Result jets have order two below the
// input, which must be at least 2.
template <class R>
Magnitudes<R> fundamental_magnitudes(const SurfaceJets<R> &p)
{
    p.check_consistent();
    if (p.order() < 2) {
        throw std::invalid_argument("fundamental_magnitudes: jet order must be >= 2");
    }
    const int m = p.order() - 2;

    detail::Vec3Jet<R> xu{p.x.du(), p.y.du(), p.z.du()};
    detail::Vec3Jet<R> xv{p.x.dv(), p.y.dv(), p.z.dv()};
    detail::Vec3Jet<R> xut = detail::truncated(xu, m);
    detail::Vec3Jet<R> xvt = detail::truncated(xv, m);
    detail::Vec3Jet<R> xuu{xu[0].du(), xu[1].du(), xu[2].du()};
    detail::Vec3Jet<R> xuv{xu[0].dv(), xu[1].dv(), xu[2].dv()};
    detail::Vec3Jet<R> xvv{xv[0].dv(), xv[1].dv(), xv[2].dv()};
    detail::Vec3Jet<R> n = detail::cross(xut, xvt);

    return Magnitudes<R>{detail::dot(xut, xut), detail::dot(xut, xvt),
                         detail::dot(xvt, xvt), detail::dot(xuu, n),
                         detail::dot(xuv, n),   detail::dot(xvv, n)};
}

// H_n = E g - 2 F f + G e, the numerator of the mean curvature. Vanishes
// exactly where the true mean curvature vanishes.
template <class R>
Jet<R> mean_curvature_numerator(const Magnitudes<R> &m)
{
    return m.E * m.g - 2.0 * (m.F * m.f) + m.G * m.e;
}

// K_n = e g - f^2, the numerator of the Gaussian curvature in the same
// unnormalized convention.
template <class R>
Jet<R> gaussian_curvature_numerator(const Magnitudes<R> &m)
{
    return m.e * m.g - m.f * m.f;
}

// sqrt(E G - F^2) from magnitude values at a fixed t. Values within
// -1e-10 of zero clamp to zero; anything more negative is a genuine
// degeneracy and is reported with the node location.
inline double area_integrand(double E, double F, double G, double u, double v)
{
    double w = E * G - F * F;
    if (w < 0.0) {
        if (w < -1e-10) {
            throw std::runtime_error(
                "area_integrand: EG - F^2 = " + std::to_string(w) +
                " < -1e-10 at node (u=" + std::to_string(u) +
                ", v=" + std::to_string(v) + ")");
        }
        w = 0.0;
    }
    return std::sqrt(w);
}

} // namespace minsurf
