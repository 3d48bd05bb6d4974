#include "minsurf/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace minsurf {

namespace {

bool layer_uses_unit_h(H0Mode mode, std::size_t layer_index)
{
    switch (mode) {
    case H0Mode::TrueH:
        return false;
    case H0Mode::UnitHFirstStep:
        return layer_index == 0;
    case H0Mode::UnitHEveryStep:
        return true;
    }
    return false;
}

// b H k (or b H N) as jets of order `ord`, the displacement added by
// the given layer without its t factor. `inner` holds the surface the
// layer deforms, at order ord + 2.
std::array<Jet<double>, 3> displacement_jets(const SurfaceSpec &spec,
                                             std::size_t layer_index,
                                             const SurfaceJets<double> &inner,
                                             double u, double v, int ord)
{
    Jet<double> scale = spec.entry.blend_jets(u, v, ord);
    if (!layer_uses_unit_h(spec.entry.h0_mode, layer_index)) {
        auto mags = fundamental_magnitudes(inner);
        scale = scale * mean_curvature_numerator(mags).truncated(ord);
    }
    if (spec.entry.direction == DirectionMode::FixedVector) {
        const auto &k = spec.entry.fixed_k;
        return {scale * k[0], scale * k[1], scale * k[2]};
    }
    auto n = normal_numerator_jets(inner);
    return {scale * n[0].truncated(ord), scale * n[1].truncated(ord),
            scale * n[2].truncated(ord)};
}

SurfaceJets<double> surface_jets_real(const SurfaceSpec &spec,
                                      std::size_t nlayers, double u, double v,
                                      int ord)
{
    if (nlayers == 0) {
        return spec.entry.base_jets(u, v, ord);
    }
    SurfaceJets<double> inner =
        surface_jets_real(spec, nlayers - 1, u, v, ord + 2);
    auto disp = displacement_jets(spec, nlayers - 1, inner, u, v, ord);
    const double t = spec.layers[nlayers - 1].t_value;
    return {inner.x.truncated(ord) + t * disp[0],
            inner.y.truncated(ord) + t * disp[1],
            inner.z.truncated(ord) + t * disp[2]};
}

// a + t b over the Poly ring.
Jet<Poly> affine_in_t(const Jet<double> &a, const Jet<double> &b)
{
    Jet<Poly> out(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        for (int j = 0; j + i <= a.order(); ++j) {
            out.at(i, j) = Poly{{a.at(i, j), b.at(i, j)}};
        }
    }
    return out;
}

// Jets of the surface with `frozen` layers applied numerically plus one
// pending displacement whose t stays symbolic.
SurfaceJets<Poly> surface_jets_symbolic(const SurfaceSpec &spec,
                                        std::size_t frozen, double u, double v,
                                        int ord)
{
    SurfaceJets<double> inner = surface_jets_real(spec, frozen, u, v, ord + 2);
    auto disp = displacement_jets(spec, frozen, inner, u, v, ord);
    return {affine_in_t(inner.x.truncated(ord), disp[0]),
            affine_in_t(inner.y.truncated(ord), disp[1]),
            affine_in_t(inner.z.truncated(ord), disp[2])};
}

// Splits flattened node indices across threads; results land in
// caller-owned slots so reductions stay in a fixed order. Exceptions
// from worker threads are rethrown after the join.
template <class F>
void for_each_node(int nu, int nv, int threads, F &&f)
{
    const int total = nu * nv;
    auto run_range = [&](int lo, int hi) {
        for (int idx = lo; idx < hi; ++idx) {
            f(idx / nv, idx % nv, idx);
        }
    };
    if (threads <= 1 || total < 2 * threads) {
        run_range(0, total);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::string> worker_errors(static_cast<std::size_t>(threads));
    const int chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int lo = t * chunk;
        const int hi = std::min(total, lo + chunk);
        if (lo < hi) {
            pool.emplace_back([&, t, lo, hi] {
                try {
                    run_range(lo, hi);
                } catch (const std::exception &err) {
                    worker_errors[static_cast<std::size_t>(t)] = err.what();
                }
            });
        }
    }
    for (auto &th : pool) {
        th.join();
    }
    for (const std::string &msg : worker_errors) {
        if (!msg.empty()) {
            throw std::runtime_error(msg);
        }
    }
}

double pct_decrease(double ai, double aj, double denom)
{
    return 100.0 * (ai - aj) / denom;
}

// nu/mu^2 under the entry's convention; undefined for flat surfaces.
std::optional<double> ratio_for(const CatalogEntry &entry,
                                const SurfaceMetrics &m)
{
    if (entry.ratio_convention == RatioConvention::MetricScaled) {
        if (m.mu_scaled_sq > 0.0) {
            return std::sqrt(m.nu_scaled_sq) / m.mu_scaled_sq;
        }
    } else if (m.mu_sq > 0.0) {
        return curvature_ratio(std::sqrt(m.nu_sq), m.mu_sq);
    }
    return std::nullopt;
}

} // namespace

SurfaceJets<double> evaluate_surface(const SurfaceSpec &spec, double u,
                                     double v, int order)
{
    if (order < 0) {
        throw std::invalid_argument("evaluate_surface: negative order");
    }
    return surface_jets_real(spec, spec.layers.size(), u, v, order);
}

SurfaceJets<Poly> evaluate_surface_symbolic(const SurfaceSpec &spec, double u,
                                            double v, int order)
{
    if (spec.layers.empty()) {
        throw std::invalid_argument(
            "evaluate_surface_symbolic: no layer whose t could stay symbolic");
    }
    return surface_jets_symbolic(spec, spec.layers.size() - 1, u, v, order);
}

Poly mu_sq_polynomial(const SurfaceSpec &spec, const QuadratureRule &rule,
                      int threads)
{
    const auto &nu_ = rule.nodes_u();
    const auto &nv_ = rule.nodes_v();
    std::vector<Poly> h_sq(nu_.size() * nv_.size());

    for_each_node(
        static_cast<int>(nu_.size()), static_cast<int>(nv_.size()), threads,
        [&](int i, int j, int idx) {
            SurfaceJets<Poly> sj = surface_jets_symbolic(
                spec, spec.layers.size(), nu_[i], nv_[j], 2);
            Poly h = mean_curvature_numerator(fundamental_magnitudes(sj)).value();
            h_sq[idx] = h * h;
        });

    Poly acc;
    for (std::size_t i = 0; i < nu_.size(); ++i) {
        for (std::size_t j = 0; j < nv_.size(); ++j) {
            const Poly &term = h_sq[i * nv_.size() + j];
            if (!term.all_finite()) {
                throw std::runtime_error(
                    "mu_sq_polynomial: non-finite integrand at node (u=" +
                    std::to_string(nu_[i]) + ", v=" + std::to_string(nv_[j]) + ")");
            }
            acc += term * rule.weight(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return acc;
}

SurfaceMetrics surface_metrics(const SurfaceSpec &spec,
                               const QuadratureRule &rule, int threads)
{
    const auto &nu_ = rule.nodes_u();
    const auto &nv_ = rule.nodes_v();

    struct NodeValues {
        double area_int, h_sq, k_sq, h_scaled_sq, k_scaled_sq;
    };
    std::vector<NodeValues> vals(nu_.size() * nv_.size());
    std::vector<std::string> errors(vals.size());

    for_each_node(
        static_cast<int>(nu_.size()), static_cast<int>(nv_.size()), threads,
        [&](int i, int j, int idx) {
            try {
                const double u = nu_[i];
                const double v = nv_[j];
                SurfaceJets<double> sj =
                    surface_jets_real(spec, spec.layers.size(), u, v, 2);
                auto mags = fundamental_magnitudes(sj);
                const double E = mags.E.value();
                const double F = mags.F.value();
                const double G = mags.G.value();
                const double H = mean_curvature_numerator(mags).value();
                const double K = gaussian_curvature_numerator(mags).value();
                const double W = E * G - F * F;
                NodeValues nv2;
                nv2.area_int = area_integrand(E, F, G, u, v);
                nv2.h_sq = H * H;
                nv2.k_sq = K * K;
                const double hs = H / (2.0 * W);
                const double ks = K / W;
                nv2.h_scaled_sq = hs * hs;
                nv2.k_scaled_sq = ks * ks;
                vals[idx] = nv2;
            } catch (const std::exception &err) {
                errors[idx] = err.what();
            }
        });

    for (const std::string &msg : errors) {
        if (!msg.empty()) {
            throw std::runtime_error(msg);
        }
    }

    SurfaceMetrics m;
    for (std::size_t i = 0; i < nu_.size(); ++i) {
        for (std::size_t j = 0; j < nv_.size(); ++j) {
            const NodeValues &nv2 = vals[i * nv_.size() + j];
            const double w = rule.weight(static_cast<int>(i), static_cast<int>(j));
            if (!std::isfinite(nv2.h_scaled_sq) || !std::isfinite(nv2.k_scaled_sq)) {
                throw std::runtime_error(
                    "surface_metrics: degenerate first form at node (u=" +
                    std::to_string(nu_[i]) + ", v=" + std::to_string(nv_[j]) + ")");
            }
            m.area += w * nv2.area_int;
            m.mu_sq += w * nv2.h_sq;
            m.nu_sq += w * nv2.k_sq;
            m.mu_scaled_sq += w * nv2.h_scaled_sq;
            m.nu_scaled_sq += w * nv2.k_scaled_sq;
        }
    }
    return m;
}

Report iterate(const SurfaceSpec &spec, int steps, const EngineConfig &config)
{
    if (steps < 1) {
        throw std::invalid_argument("iterate: steps must be >= 1");
    }
    if (config.quad_order < 1) {
        throw std::invalid_argument("iterate: quadrature order must be >= 1");
    }
    const std::size_t total = spec.layers.size() + static_cast<std::size_t>(steps);
    if (total > 4) {
        std::cerr << "warning: " << total
                  << " steps requested; jet order grows with depth and cost "
                     "grows quadratically beyond 4 steps\n";
    }

    Report report;
    report.config = config;
    report.spec = spec;
    report.spec.layers.clear();

    const QuadratureRule rule(config.quad_order, spec.entry.domain);

    try {
        SurfaceMetrics m0 = surface_metrics(report.spec, rule, config.threads);
        IterationRecord rec0;
        rec0.n = 0;
        rec0.mu_sq_value = m0.mu_sq;
        rec0.nu = std::sqrt(m0.nu_sq);
        rec0.area = m0.area;
        rec0.ratio = ratio_for(spec.entry, m0);
        report.records.push_back(std::move(rec0));

        double prev_mu_sq = m0.mu_sq;
        for (std::size_t n = 1; n <= total; ++n) {
            Poly mu = mu_sq_polynomial(report.spec, rule, config.threads);

            double t = 0.0;
            if (n <= spec.layers.size()) {
                // Resumed layer: its t is part of the run state.
                t = spec.layers[n - 1].t_value;
            } else if (mu.degree() < 1) {
                // Flat (or otherwise stationary) surface: the surrogate
                // does not depend on t, so do not move.
                t = 0.0;
            } else {
                t = minimize(mu, config.bracket[0], config.bracket[1]).t_min;
            }
            report.spec.layers.push_back(
                {t, static_cast<int>(n) - 1});

            SurfaceMetrics m = surface_metrics(report.spec, rule, config.threads);
            IterationRecord rec;
            rec.n = static_cast<int>(n);
            rec.t_min = t;
            rec.mu_sq = mu;
            rec.mu_sq_value = m.mu_sq;
            rec.nu = std::sqrt(m.nu_sq);
            rec.area = m.area;
            rec.ratio = ratio_for(spec.entry, m);
            if (prev_mu_sq > 0.0) {
                rec.mu_rms_decrease_pct =
                    100.0 * (1.0 - std::sqrt(m.mu_sq / prev_mu_sq));
            }
            prev_mu_sq = m.mu_sq;
            report.records.push_back(std::move(rec));
        }
    } catch (const std::exception &err) {
        report.status = "error";
        report.error = err.what();
    }

    // Percentage decreases against the reference minimal area when one
    // is configured (p_ij), against A_0 otherwise (q_ij).
    if (report.records.size() > 1) {
        const double a0 = report.records.front().area;
        const bool has_ref = spec.entry.reference_area.has_value() &&
                             *spec.entry.reference_area < a0;
        const double denom = has_ref ? a0 - *spec.entry.reference_area : a0;
        if (denom > 0.0) {
            for (std::size_t n = 1; n < report.records.size(); ++n) {
                auto &rec = report.records[n];
                rec.pct_is_p = has_ref;
                rec.pct_prev =
                    pct_decrease(report.records[n - 1].area, rec.area, denom);
                rec.pct_total = pct_decrease(a0, rec.area, denom);
            }
        }
    }
    return report;
}

std::vector<std::vector<double>>
percentage_decreases(const std::vector<double> &areas,
                     std::optional<double> reference)
{
    if (areas.empty()) {
        throw std::invalid_argument("percentage_decreases: no areas");
    }
    for (double a : areas) {
        if (!(a > 0.0)) {
            throw std::invalid_argument("percentage_decreases: areas must be positive");
        }
    }
    if (reference && *reference >= areas.front()) {
        throw std::invalid_argument(
            "percentage_decreases: reference area must be below A_0");
    }
    const double denom = reference ? areas.front() - *reference : areas.front();
    std::vector<std::vector<double>> out(areas.size(),
                                         std::vector<double>(areas.size(), 0.0));
    for (std::size_t i = 0; i < areas.size(); ++i) {
        for (std::size_t j = i + 1; j < areas.size(); ++j) {
            out[i][j] = pct_decrease(areas[i], areas[j], denom);
        }
    }
    return out;
}

double curvature_ratio(double nu, double mu_sq)
{
    if (mu_sq == 0.0) {
        throw std::domain_error(
            "curvature_ratio: mu^2 = 0 (flat surface), ratio undefined");
    }
    return nu / mu_sq;
}

std::array<double, 3> displacement_field(const SurfaceSpec &spec, int step,
                                         double u, double v)
{
    if (step < 1 || static_cast<std::size_t>(step) > spec.layers.size()) {
        throw std::invalid_argument("displacement_field: step out of range");
    }
    SurfaceSpec before = spec;
    before.layers.resize(static_cast<std::size_t>(step) - 1);
    SurfaceSpec after = spec;
    after.layers.resize(static_cast<std::size_t>(step));

    SurfaceJets<double> a = evaluate_surface(before, u, v, 0);
    SurfaceJets<double> b = evaluate_surface(after, u, v, 0);
    return {b.x.value() - a.x.value(), b.y.value() - a.y.value(),
            b.z.value() - a.z.value()};
}

int thread_count_from_env()
{
    const char *env = std::getenv("MINSURF_THREADS");
    if (env == nullptr) {
        return 1;
    }
    const int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

} // namespace minsurf
