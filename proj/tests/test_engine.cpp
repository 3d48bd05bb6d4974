#include <doctest.h>

#include "minsurf/engine.hpp"

#include "reference_closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <random>

using minsurf::EngineConfig;
using minsurf::Poly;
using minsurf::QuadratureRule;
using minsurf::SurfaceSpec;

namespace {

SurfaceSpec spec_for(const char *name, minsurf::H0Mode mode = minsurf::H0Mode::TrueH)
{
    SurfaceSpec spec{minsurf::get_entry(name), {}};
    spec.entry.h0_mode = mode;
    return spec;
}

bool close_rel(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Coefficient agreement up to double-precision cancellation: the hump's
// t^3 coefficient sums jet products of order 1e10 down to O(1e2), so
// eps * 1e10 = 2e-6 of absolute noise is irreducible in doubles. The
// relative check binds everywhere the coefficient is not crossing zero.
bool close_coeff(double a, double b)
{
    return std::abs(a - b) <=
           std::max(1e-9 * std::max(std::abs(a), std::abs(b)), 5e-6);
}

} // namespace

TEST_CASE("surface evaluation with layers")
{
    // No layers: the base surface itself.
    SurfaceSpec hump = spec_for("hump");
    auto p = minsurf::evaluate_surface(hump, 0.5, 0.5, 0);
    CHECK(p.x.value() == doctest::Approx(0.5));
    CHECK(p.y.value() == doctest::Approx(0.5));
    CHECK(p.z.value() == doctest::Approx(1.0));

    // One bilinear layer: x-component gains 4 t b H0 with flipped sign.
    SurfaceSpec bil = spec_for("bilinear");
    const double t1 = 0.4836;
    bil.layers.push_back({t1, 0});
    for (double u : {0.21, 0.6}) {
        for (double v : {0.35, 0.8}) {
            auto q = minsurf::evaluate_surface(bil, u, v, 0);
            const double expected =
                u + v - 2 * u * v +
                4.0 * t1 * u * v * (1 - u) * (1 - v) * (1 - 2 * u) * (1 - 2 * v);
            CHECK(q.x.value() == doctest::Approx(expected).epsilon(1e-13));
            CHECK(q.y.value() == doctest::Approx(v));
            CHECK(q.z.value() == doctest::Approx(u));
        }
    }

    // Symbolic topmost layer at t = 0 equals the surface without the layer.
    auto sym = minsurf::evaluate_surface_symbolic(bil, 0.3, 0.7, 2);
    auto at0 = minsurf::eval_at(sym.x, 0.0);
    SurfaceSpec bare = spec_for("bilinear");
    auto base = minsurf::evaluate_surface(bare, 0.3, 0.7, 2);
    for (int i = 0; i <= 2; ++i) {
        for (int j = 0; j + i <= 2; ++j) {
            CHECK(close_rel(at0.at(i, j), base.x.at(i, j), 1e-12));
        }
    }
    CHECK_THROWS_AS(minsurf::evaluate_surface_symbolic(bare, 0.3, 0.7, 2),
                    std::invalid_argument);
}

namespace {

// H(u, v, t) of the first variational surface as a polynomial in t: one
// pending layer with its t symbolic.
Poly first_step_h_poly(SurfaceSpec spec, double u, double v)
{
    spec.layers.push_back({0.0, 0});
    auto sj = minsurf::evaluate_surface_symbolic(spec, u, v, 2);
    return minsurf::mean_curvature_numerator(minsurf::fundamental_magnitudes(sj))
        .value();
}

} // namespace

TEST_CASE("symbolic H matches the reference t-coefficients")
{
    std::mt19937 rng(160818);
    std::uniform_real_distribution<double> unit(0.05, 0.95);

    SurfaceSpec hump = spec_for("hump");
    SurfaceSpec hemi = spec_for("hemiellipsoid", minsurf::H0Mode::UnitHFirstStep);
    SurfaceSpec bil = spec_for("bilinear");

    for (int trial = 0; trial < 20; ++trial) {
        const double u = unit(rng);
        const double v = unit(rng);

        // Hump: reference H1 coefficients p_0..p_3.
        const Poly hh = first_step_h_poly(hump, u, v);
        REQUIRE(hh.degree() == 3);
        CHECK(close_coeff(hh.coeff(0), refsol::hump_p0(u, v)));
        CHECK(close_coeff(hh.coeff(1), refsol::hump_p1(u, v)));
        CHECK(close_coeff(hh.coeff(2), refsol::hump_p2(u, v)));
        CHECK(close_coeff(hh.coeff(3), refsol::hump_p3(u, v)));

        // Hemiellipsoid with the unit-H first step.
        const double hu = u * std::numbers::pi;
        const double hv = v * std::numbers::pi;
        const Poly hs = first_step_h_poly(hemi, hu, hv);
        REQUIRE(hs.degree() == 3);
        CHECK(close_rel(hs.coeff(0), refsol::hemi_unit_p0(hu, hv), 1e-9));
        CHECK(close_rel(hs.coeff(1), refsol::hemi_unit_p1(hu, hv), 1e-9));
        CHECK(close_rel(hs.coeff(2), refsol::hemi_unit_p2(hu, hv), 1e-9));
        CHECK(close_rel(hs.coeff(3), refsol::hemi_unit_p3(hu, hv), 1e-9));

        // Bilinear: reference t-coefficients of H1^2.
        const Poly hb = first_step_h_poly(bil, u, v);
        const Poly hb_sq = hb * hb;
        CHECK(close_rel(hb_sq.coeff(0), refsol::bilinear_q0(u, v), 1e-9));
        CHECK(close_rel(hb_sq.coeff(1), refsol::bilinear_q1(u, v), 1e-9));
        CHECK(close_rel(hb_sq.coeff(2), refsol::bilinear_q2(u, v), 1e-9));
        CHECK(close_rel(hb_sq.coeff(3), refsol::bilinear_q3(u, v), 1e-9));
    }
}

TEST_CASE("mu^2 polynomials match the reference coefficients")
{
    const EngineConfig config;

    // Hump, first step: 0.5% per coefficient.
    {
        SurfaceSpec spec = spec_for("hump");
        const QuadratureRule rule(config.quad_order, spec.entry.domain);
        const Poly mu = minsurf::mu_sq_polynomial(spec, rule);
        const double expected[7] = {1637.65,    -20425.0,    195725.0,
                                    -898809.0,  2.98414e6,   -5.10679e6,
                                    4.1912e6};
        REQUIRE(mu.degree() == 6);
        for (int k = 0; k <= 6; ++k) {
            CHECK(std::abs(mu.coeff(k) - expected[k]) <
                  0.005 * std::abs(expected[k]));
        }
    }

    // Bilinear, first step: 1%.
    {
        SurfaceSpec spec = spec_for("bilinear");
        const QuadratureRule rule(config.quad_order, spec.entry.domain);
        const Poly mu = minsurf::mu_sq_polynomial(spec, rule);
        const double expected[7] = {1.7778, -6.8267, 6.4261, 0.6966,
                                    0.2648, 0.0076,  0.0009};
        for (int k = 0; k <= 6; ++k) {
            CHECK(std::abs(mu.coeff(k) - expected[k]) <=
                  0.01 * std::abs(expected[k]) + 5e-5);
        }
    }

    // Hemiellipsoid in both H modes: 0.5%.
    {
        SurfaceSpec spec = spec_for("hemiellipsoid", minsurf::H0Mode::UnitHFirstStep);
        const QuadratureRule rule(config.quad_order, spec.entry.domain);
        const Poly mu = minsurf::mu_sq_polynomial(spec, rule);
        const double expected[7] = {12.337,  85.3333, 317.473, 813.722,
                                    1465.01, 1724.78, 1270.43};
        for (int k = 0; k <= 6; ++k) {
            CHECK(std::abs(mu.coeff(k) - expected[k]) <
                  0.005 * std::abs(expected[k]));
        }
    }
    {
        SurfaceSpec spec = spec_for("hemiellipsoid");
        const QuadratureRule rule(config.quad_order, spec.entry.domain);
        const Poly mu = minsurf::mu_sq_polynomial(spec, rule);
        const double expected[7] = {12.3,    -219.9,   1683.3, -7479.4,
                                    22816.4, -41607.9, 39774.1};
        for (int k = 0; k <= 6; ++k) {
            CHECK(std::abs(mu.coeff(k) - expected[k]) <=
                  0.005 * std::abs(expected[k]) + 0.05);
        }
    }
}

TEST_CASE("second-step polynomials stay near the reference runs")
{
    // Loose pins: the reference second-step coefficients embed the
    // rounded first-step t, so agreement beyond ~0.1% is not expected.
    EngineConfig config;
    {
        SurfaceSpec spec = spec_for("hemiellipsoid", minsurf::H0Mode::UnitHFirstStep);
        const auto run = minsurf::iterate(spec, 2, config);
        const double mu2[7] = {1.73308, -40.3821, 363.123, -1145.39,
                               5060.49, -9141.25, 21975.9};
        const auto &m = *run.records[2].mu_sq;
        for (int k = 0; k <= 6; ++k) {
            CHECK(std::abs(m.coeff(k) - mu2[k]) <= 0.01 * std::abs(mu2[k]));
        }
        CHECK(std::abs(*run.records[2].t_min - 0.0706353) < 1e-3);
    }
    {
        SurfaceSpec spec = spec_for("hemiellipsoid");
        const auto run = minsurf::iterate(spec, 2, config);
        const double mu2[7] = {0.8246,  -32.3979, 701.03, -174.627,
                               9417.35, 4011.85,  77354.5};
        const auto &m = *run.records[2].mu_sq;
        for (int k = 0; k <= 6; ++k) {
            CHECK(std::abs(m.coeff(k) - mu2[k]) <= 0.01 * std::abs(mu2[k]));
        }
        CHECK(std::abs(run.records[2].area - 4.23731) < 1e-3);
        CHECK(std::abs(*run.records[2].pct_total - 65.1223) < 0.05);
        CHECK(std::abs(*run.records[2].t_min - 0.023) < 1e-3);
    }
    {
        const auto run = minsurf::iterate(spec_for("hump"), 2, config);
        const double mu2[7] = {897.323,   -14022.3,  207068.0, -1.0771e6,
                               6.4546e6, -9.9155e6, 1.9927e7};
        const auto &m = *run.records[2].mu_sq;
        for (int k = 0; k <= 6; ++k) {
            CHECK(std::abs(m.coeff(k) - mu2[k]) <= 0.01 * std::abs(mu2[k]));
        }
    }
}

TEST_CASE("iterating the hump reproduces the reference run")
{
    EngineConfig config;
    const auto report = minsurf::iterate(spec_for("hump"), 2, config);
    REQUIRE(report.status == "ok");
    REQUIRE(report.records.size() == 3);

    CHECK(std::abs(*report.records[1].t_min - 0.088933) < 1e-4);
    CHECK(std::abs(*report.records[2].t_min - 0.0441) < 1e-3);
    CHECK(std::abs(report.records[0].area - 2.49452) < 1e-3);
    CHECK(std::abs(report.records[1].area - 2.11589) < 1e-3);
    CHECK(std::abs(report.records[2].area - 1.92788) < 1e-3);
    CHECK(report.records[1].pct_is_p);
    CHECK(std::abs(*report.records[1].pct_total - 25.3341) < 0.05);
    CHECK(std::abs(*report.records[2].pct_total - 37.9141) < 0.05);
}

TEST_CASE("boundary never moves")
{
    EngineConfig config;
    config.quad_order = 16;
    for (const char *name : {"hump", "bilinear"}) {
        const auto report = minsurf::iterate(spec_for(name), 2, config);
        REQUIRE(report.status == "ok");
        const auto &d = report.spec.entry.domain;
        for (int step = 1; step <= 2; ++step) {
            for (int i = 0; i < 64; ++i) {
                const double s = static_cast<double>(i) / 63.0;
                const double u = d.u0 + s * (d.u1 - d.u0);
                const double v = d.v0 + s * (d.v1 - d.v0);
                for (auto [bu, bv] : {std::pair{u, d.v0}, std::pair{u, d.v1},
                                      std::pair{d.u0, v}, std::pair{d.u1, v}}) {
                    const auto disp =
                        minsurf::displacement_field(report.spec, step, bu, bv);
                    const double mag = std::sqrt(disp[0] * disp[0] +
                                                 disp[1] * disp[1] +
                                                 disp[2] * disp[2]);
                    CHECK(mag < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("surrogate descent and area descent")
{
    EngineConfig config;
    config.quad_order = 24;
    for (const char *name : {"hump", "bilinear"}) {
        const auto report = minsurf::iterate(spec_for(name), 2, config);
        REQUIRE(report.status == "ok");
        for (std::size_t n = 1; n < report.records.size(); ++n) {
            const auto &rec = report.records[n];
            REQUIRE(rec.mu_sq.has_value());
            CHECK(rec.mu_sq->eval(*rec.t_min) <= rec.mu_sq->eval(0.0));
            CHECK(rec.area <= report.records[n - 1].area);
        }
    }
}

TEST_CASE("t-propagation consistency")
{
    // The mu^2 polynomial evaluated at a fixed t equals the direct
    // numeric-ring integral of H^2 with that t frozen into a layer.
    EngineConfig config;
    config.quad_order = 16;
    std::mt19937 rng(99182);
    std::uniform_real_distribution<double> tdist(-0.5, 0.5);

    for (const char *name : {"hump", "bilinear", "hemiellipsoid"}) {
        SurfaceSpec spec = spec_for(name);
        const QuadratureRule rule(config.quad_order, spec.entry.domain);
        const Poly mu = minsurf::mu_sq_polynomial(spec, rule);
        for (int trial = 0; trial < 3; ++trial) {
            const double t = tdist(rng);
            SurfaceSpec frozen = spec;
            frozen.layers.push_back({t, 0});
            const auto m = minsurf::surface_metrics(frozen, rule);
            CHECK(close_rel(mu.eval(t), m.mu_sq, 1e-10));
        }
    }
}

TEST_CASE("unit-H variant cannot be iterated")
{
    // With H frozen to 1 at every step, step 2's displacement field is
    // pointwise proportional to step 1's.
    SurfaceSpec spec = spec_for("hemiellipsoid", minsurf::H0Mode::UnitHEveryStep);
    EngineConfig config;
    config.quad_order = 16;
    const auto report = minsurf::iterate(spec, 2, config);
    REQUIRE(report.status == "ok");

    std::mt19937 rng(55);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    double ratio = 0.0;
    bool first = true;
    for (int i = 0; i < 100; ++i) {
        const double u = unit(rng) * std::numbers::pi;
        const double v = unit(rng) * std::numbers::pi;
        const auto d1 = minsurf::displacement_field(report.spec, 1, u, v);
        const auto d2 = minsurf::displacement_field(report.spec, 2, u, v);
        // Displacements are along (0, 1, 0).
        REQUIRE(std::abs(d1[1]) > 0.0);
        const double r = d2[1] / d1[1];
        if (first) {
            ratio = r;
            first = false;
        } else {
            CHECK(std::abs(r - ratio) < 1e-10);
        }
    }
}

TEST_CASE("threaded evaluation is bit-identical to sequential")
{
    SurfaceSpec spec = spec_for("hump");
    const QuadratureRule rule(16, spec.entry.domain);
    const Poly seq = minsurf::mu_sq_polynomial(spec, rule, 1);
    const Poly par = minsurf::mu_sq_polynomial(spec, rule, 3);
    CHECK(seq.coeffs() == par.coeffs());

    const auto m1 = minsurf::surface_metrics(spec, rule, 1);
    const auto m3 = minsurf::surface_metrics(spec, rule, 3);
    CHECK(m1.area == m3.area);
    CHECK(m1.mu_sq == m3.mu_sq);
    CHECK(m1.nu_sq == m3.nu_sq);
}

TEST_CASE("percentage decreases")
{
    const std::vector<double> areas{6.28319, 4.70625, 4.44025};
    const auto p = minsurf::percentage_decreases(areas, std::numbers::pi);
    CHECK(p[0][1] == doctest::Approx(50.1954).epsilon(1e-4));
    CHECK(p[1][2] == doctest::Approx(8.46705).epsilon(1e-4));
    CHECK(p[0][0] == 0.0);

    const std::vector<double> bil{1.280789, 1.27936, 1.279301};
    const auto q = minsurf::percentage_decreases(bil, std::nullopt);
    CHECK(q[0][1] == doctest::Approx(0.111572).epsilon(1e-3));
    CHECK(q[0][2] == doctest::Approx(0.116178).epsilon(1e-3));

    CHECK(minsurf::percentage_decreases({2.0, 2.0}, std::nullopt)[0][1] ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(minsurf::percentage_decreases({1.0, 0.9}, 1.5),
                    std::invalid_argument);
}

TEST_CASE("curvature ratio")
{
    CHECK(minsurf::curvature_ratio(4.0, 16.0 / 9.0) == doctest::Approx(2.25));
    CHECK_THROWS_AS(minsurf::curvature_ratio(0.0, 0.0), std::domain_error);
}

TEST_CASE("flat custom patch iterates as a no-op")
{
    const std::string flat = R"json({
        "name": "flat",
        "components": ["u", "v", "0"],
        "domain": [0, 1, 0, 1],
        "blend": "u*v*(1-u)*(1-v)",
        "direction": {"fixed": [0, 0, 1]}
    })json";
    SurfaceSpec spec{minsurf::load_custom(flat), {}};
    EngineConfig config;
    config.quad_order = 8;
    const auto report = minsurf::iterate(spec, 2, config);
    REQUIRE(report.status == "ok");
    for (const auto &rec : report.records) {
        CHECK(rec.area == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rec.mu_sq_value == doctest::Approx(0.0));
        CHECK(!rec.ratio.has_value());
    }
    CHECK(*report.records[1].t_min == 0.0);
}
