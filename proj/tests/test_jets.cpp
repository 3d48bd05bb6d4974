#include <doctest.h>

#include "minsurf/jet.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "fd_oracle.hpp"
#include <vector>

using minsurf::Jet;
using minsurf::Poly;
using D = Jet<double>;

TEST_CASE("seeds")
{
    const D u = D::seed_u(0.5, 2);
    CHECK(u.at(0, 0) == 0.5);
    CHECK(u.at(1, 0) == 1.0);
    CHECK(u.at(0, 1) == 0.0);
    CHECK(u.at(2, 0) == 0.0);
    CHECK(u.at(1, 1) == 0.0);
    CHECK(u.at(0, 2) == 0.0);

    const D v = D::seed_v(0.0, 1);
    CHECK(v.at(0, 0) == 0.0);
    CHECK(v.at(0, 1) == 1.0);

    const D u0 = D::seed_u(0.3, 0);
    CHECK(u0.value() == 0.3);
}

TEST_CASE("arithmetic")
{
    const D u = D::seed_u(1.0, 2);
    const D sq = u * u;
    CHECK(sq.at(0, 0) == 1.0);
    CHECK(sq.at(1, 0) == 2.0);
    CHECK(sq.at(2, 0) == 1.0);

    const D one = D::constant(1.0, 2);
    const D same = sq * one;
    CHECK(same.at(1, 0) == sq.at(1, 0));

    // u*v at (0.3, 0.7)
    const D uv = D::seed_u(0.3, 2) * D::seed_v(0.7, 2);
    CHECK(uv.at(0, 0) == doctest::Approx(0.21));
    CHECK(uv.at(1, 1) == doctest::Approx(1.0));

    CHECK_THROWS_AS(D::seed_u(0.0, 2) + D::seed_u(0.0, 3), std::invalid_argument);
}

TEST_CASE("sin and cos series")
{
    const D s = sin(D::seed_u(0.0, 3));
    CHECK(s.at(0, 0) == doctest::Approx(0.0));
    CHECK(s.at(1, 0) == doctest::Approx(1.0));
    CHECK(s.at(2, 0) == doctest::Approx(0.0));
    CHECK(s.at(3, 0) == doctest::Approx(-1.0 / 6.0));

    const D c = cos(D::seed_u(0.0, 2));
    CHECK(c.at(0, 0) == doctest::Approx(1.0));
    CHECK(c.at(1, 0) == doctest::Approx(0.0));
    CHECK(c.at(2, 0) == doctest::Approx(-0.5));

    const D s8 = sin(D::seed_u(0.8, 2));
    CHECK(s8.at(0, 0) == doctest::Approx(std::sin(0.8)).epsilon(1e-14));
    CHECK(s8.at(1, 0) == doctest::Approx(std::cos(0.8)).epsilon(1e-14));
    CHECK(s8.at(2, 0) == doctest::Approx(-std::sin(0.8) / 2.0).epsilon(1e-14));
}

TEST_CASE("extract applies factorials and checks bounds")
{
    const D u = D::seed_u(0.4, 2);
    const D sq = u * u;
    CHECK(sq.extract(0, 0) == doctest::Approx(0.16));
    CHECK(sq.extract(2, 0) == doctest::Approx(2.0));

    // 16 u v (1-u)(1-v): d2/dudv at the center vanishes
    const D uu = D::seed_u(0.5, 2);
    const D vv = D::seed_v(0.5, 2);
    const D one = D::constant(1.0, 2);
    const D hump = 16.0 * (uu * vv * (one - uu) * (one - vv));
    CHECK(hump.extract(1, 1) == doctest::Approx(0.0));

    CHECK_THROWS_AS(sq.at(2, 1), std::out_of_range);
}

TEST_CASE("random composites match finite differences")
{
    std::mt19937 rng(7021);
    std::uniform_real_distribution<double> point(0.2, 0.8);
    std::uniform_int_distribution<int> pick(0, 5);

    // A pool of building blocks combined randomly.
    for (int trial = 0; trial < 100; ++trial) {
        const double a = point(rng);
        const double b = point(rng);
        const int choice = pick(rng);

        std::function<double(double, double)> f;
        std::function<D(double, double, int)> jet;
        switch (choice) {
        case 0:
            f = [](double u, double v) { return std::sin(u) * std::cos(v) + u * v; };
            jet = [](double u, double v, int K) {
                return sin(D::seed_u(u, K)) * cos(D::seed_v(v, K)) +
                       D::seed_u(u, K) * D::seed_v(v, K);
            };
            break;
        case 1:
            f = [](double u, double v) { return (u + v) * (u - v) * std::sin(v); };
            jet = [](double u, double v, int K) {
                const D us = D::seed_u(u, K), vs = D::seed_v(v, K);
                return (us + vs) * (us - vs) * sin(vs);
            };
            break;
        case 2:
            f = [](double u, double v) { return std::cos(u) * std::cos(u) * v + u; };
            jet = [](double u, double v, int K) {
                const D cu = cos(D::seed_u(u, K));
                return cu * cu * D::seed_v(v, K) + D::seed_u(u, K);
            };
            break;
        case 3:
            f = [](double u, double v) { return u * u * v - 3.0 * (v * v * u) + 2.0; };
            jet = [](double u, double v, int K) {
                const D us = D::seed_u(u, K), vs = D::seed_v(v, K);
                return us * us * vs - 3.0 * (vs * vs * us) + D::constant(2.0, K);
            };
            break;
        case 4:
            f = [](double u, double v) { return std::sin(u) * std::sin(u) * std::sin(v); };
            jet = [](double u, double v, int K) {
                const D su = sin(D::seed_u(u, K));
                return su * su * sin(D::seed_v(v, K));
            };
            break;
        default:
            f = [](double u, double v) { return (1.0 - u) * v * std::cos(v) - u; };
            jet = [](double u, double v, int K) {
                const D us = D::seed_u(u, K), vs = D::seed_v(v, K);
                return (D::constant(1.0, K) - us) * vs * cos(vs) - us;
            };
            break;
        }

        const D j = jet(a, b, 3);
        for (int i = 0; i <= 3; ++i) {
            for (int k = 0; i + k <= 3; ++k) {
                const double via_jet = j.extract(i, k);
                const double via_fd = fdtest::partial(f, i, k, a, b);
                CHECK(std::abs(via_jet - via_fd) < 1e-6 * std::max(1.0, std::abs(via_jet)));
            }
        }
    }
}

TEST_CASE("multiplication is commutative and associative")
{
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        D a(3), b(3), c(3);
        for (int i = 0; i <= 3; ++i) {
            for (int j = 0; j + i <= 3; ++j) {
                a.at(i, j) = coeff(rng);
                b.at(i, j) = coeff(rng);
                c.at(i, j) = coeff(rng);
            }
        }
        const D ab = a * b;
        const D ba = b * a;
        const D abc1 = (a * b) * c;
        const D abc2 = a * (b * c);
        for (int i = 0; i <= 3; ++i) {
            for (int j = 0; j + i <= 3; ++j) {
                CHECK(ab.at(i, j) == doctest::Approx(ba.at(i, j)).epsilon(1e-14));
                CHECK(abc1.at(i, j) == doctest::Approx(abc2.at(i, j)).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("Poly-ring jets evaluated at fixed t match real-ring jets")
{
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> point(0.1, 0.9);
    std::uniform_real_distribution<double> tval(-1.0, 1.0);

    for (int trial = 0; trial < 50; ++trial) {
        const double u = point(rng);
        const double v = point(rng);
        const double t = tval(rng);

        // f = (u + t g)^2 + t (u v) with g = u v (1 - u)
        const D us = D::seed_u(u, 3), vs = D::seed_v(v, 3);
        const D one = D::constant(1.0, 3);
        const D g = us * vs * (one - us);

        // Poly ring: t symbolic
        using P = Jet<Poly>;
        const Poly tpoly = Poly::variable();
        P up = promote(us);
        P gp = promote(g);
        P gt(3);
        for (int i = 0; i <= 3; ++i) {
            for (int j = 0; j + i <= 3; ++j) {
                gt.at(i, j) = tpoly * Poly::constant(g.at(i, j));
            }
        }
        P uvt(3);
        const D uv = us * vs;
        for (int i = 0; i <= 3; ++i) {
            for (int j = 0; j + i <= 3; ++j) {
                uvt.at(i, j) = tpoly * Poly::constant(uv.at(i, j));
            }
        }
        const P fp = (up + gt) * (up + gt) + uvt;
        const D f_sub = eval_at(fp, t);

        // Real ring with t substituted numerically
        const D f_num = (us + t * g) * (us + t * g) + t * uv;

        for (int i = 0; i <= 3; ++i) {
            for (int j = 0; j + i <= 3; ++j) {
                const double x = f_sub.at(i, j);
                const double y = f_num.at(i, j);
                CHECK(std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)}));
            }
        }
    }
}
