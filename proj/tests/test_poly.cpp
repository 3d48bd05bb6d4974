#include <doctest.h>

#include "minsurf/poly.hpp"

#include <cmath>
#include <random>

using minsurf::Poly;

TEST_CASE("addition trims cancellations")
{
    const Poly a{{1.0, 1.0}};  // 1 + t
    const Poly b{{1.0, -1.0}}; // 1 - t
    const Poly sum = a + b;
    CHECK(sum.degree() == 0);
    CHECK(sum.coeff(0) == 2.0);

    CHECK((Poly{} + a) == a);

    const Poly c = Poly{{0.0, 0.0, 3.0}} + Poly{{0.0, 1.0}};
    CHECK(c.coeff(0) == 0.0);
    CHECK(c.coeff(1) == 1.0);
    CHECK(c.coeff(2) == 3.0);
}

TEST_CASE("multiplication")
{
    const Poly a{{1.0, 1.0}};
    const Poly b{{1.0, -1.0}};
    const Poly prod = a * b; // 1 - t^2
    CHECK(prod.coeff(0) == 1.0);
    CHECK(prod.coeff(1) == 0.0);
    CHECK(prod.coeff(2) == -1.0);

    CHECK((a * Poly{}).is_zero());

    // (1 + 2t + t^2)(1 + t) = (1 + t)^3 = 1 + 3t + 3t^2 + t^3
    const Poly cube = Poly{{1.0, 2.0, 1.0}} * Poly{{1.0, 1.0}};
    CHECK(cube.degree() == 3);
    CHECK(cube.coeff(0) == 1.0);
    CHECK(cube.coeff(1) == 3.0);
    CHECK(cube.coeff(2) == 3.0);
    CHECK(cube.coeff(3) == 1.0);
}

TEST_CASE("evaluation")
{
    // Leading terms of the hump reference mu_1^2 polynomial.
    const Poly hump{{1637.65, -20425.0}};
    CHECK(hump.eval(0.0) == 1637.65);

    const Poly p{{4.0, 5.0, 6.0}};
    CHECK(p.eval(0.0) == p.coeff(0));

    const Poly bilinear{{1.7778, -6.8267}};
    CHECK(bilinear.eval(0.0) == doctest::Approx(1.7778));
}

TEST_CASE("derivative")
{
    CHECK(Poly{{0.0, 0.0, 3.0}}.derivative() == Poly{{0.0, 6.0}});
    CHECK(Poly::constant(7.0).derivative().is_zero());

    const Poly hump{{1637.65, -20425.0, 195725.0}};
    CHECK(hump.derivative().eval(0.0) == -20425.0);
}

TEST_CASE("degree bookkeeping and zero polynomial")
{
    CHECK(Poly{}.degree() == -1);
    CHECK(Poly{{0.0, 0.0}}.is_zero());
    const Poly a{{0.0, 2.0, 0.0, 5.0}};
    const Poly b{{3.0, 0.0, 1.0}};
    CHECK((a * b).degree() == a.degree() + b.degree());
}

TEST_CASE("properties on random polynomials")
{
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    std::uniform_int_distribution<int> deg(0, 8);
    std::uniform_real_distribution<double> at(-2.0, 2.0);

    auto random_poly = [&] {
        std::vector<double> c(deg(rng) + 1);
        for (double &x : c) {
            x = coeff(rng);
        }
        return Poly{c};
    };

    for (int trial = 0; trial < 200; ++trial) {
        const Poly a = random_poly();
        const Poly b = random_poly();
        const double t = at(rng);

        // eval is a ring homomorphism
        const double lhs = (a * b).eval(t);
        const double rhs = a.eval(t) * b.eval(t);
        CHECK(std::abs(lhs - rhs) <=
              1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)}));

        // product rule holds coefficient-wise exactly... up to fp addition
        const Poly d1 = (a * b).derivative();
        const Poly d2 = a.derivative() * b + a * b.derivative();
        REQUIRE(d1.degree() == d2.degree());
        for (int k = 0; k <= d1.degree(); ++k) {
            CHECK(d1.coeff(k) == doctest::Approx(d2.coeff(k)).epsilon(1e-13));
        }
    }
}
