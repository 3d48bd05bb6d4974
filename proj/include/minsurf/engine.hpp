#pragma once

#include "minsurf/catalog.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/poly.hpp"
#include "minsurf/polyopt.hpp"
#include "minsurf/quadrature.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace minsurf {

// One applied variational step: the chosen t of that step. The surface
// after n layers is
//   x_n = x_{n-1} + t_n b(u, v) H_{n-1}(u, v) k,
// with H recomputed on demand from the layers beneath (the closed forms
// grow explosively; recomputation through jets is cheap and exact).
struct IterationLayer {
    double t_value = 0.0;
    int step_index = 0;
};

struct SurfaceSpec {
    CatalogEntry entry;
    std::vector<IterationLayer> layers;
};

// Jets of x_n (all layers applied) at (u, v). The base surface is
// internally expanded to order + 2 * layers, two extra orders per layer
// for the curvature numerator embedded in each displacement.
SurfaceJets<double> evaluate_surface(const SurfaceSpec &spec, double u,
                                     double v, int order);

// Same with the topmost layer's t left symbolic; earlier layers use
// their stored values. Substituting the stored t (or 0) recovers the
// numeric evaluation (with or without that layer).
SurfaceJets<Poly> evaluate_surface_symbolic(const SurfaceSpec &spec, double u,
                                            double v, int order);

// mu^2(t) = int int H^2(u, v, t) du dv for the *next* step: the pending
// displacement's t is symbolic, every existing layer is frozen. The
// integrand is squared in the Poly ring and integrated coefficient-wise.
Poly mu_sq_polynomial(const SurfaceSpec &spec, const QuadratureRule &rule,
                      int threads = 1);

struct IterationRecord {
    int n = 0;
    std::optional<double> t_min;  // absent for the initial surface
    std::optional<Poly> mu_sq;    // polynomial minimized at this step
    double mu_sq_value = 0.0;     // int H_n^2 of the surface itself
    double nu = 0.0;              // sqrt(int K_n^2)
    std::optional<double> ratio;  // nu / mu^2 per the entry's convention
    double area = 0.0;
    std::optional<double> pct_prev;  // p_{n-1,n} or q_{n-1,n}
    std::optional<double> pct_total; // p_{0,n} or q_{0,n}
    bool pct_is_p = false;           // true: against reference area (Af)
    std::optional<double> mu_rms_decrease_pct;
};

struct EngineConfig {
    int quad_order = 32;
    std::array<double, 2> bracket{-1.0, 1.0};
    int threads = 1;
};

struct Report {
    SurfaceSpec spec; // includes every appended layer
    EngineConfig config;
    std::vector<IterationRecord> records;
    std::string status = "ok";
    std::string error;
};

// Integrated per-surface quantities from one quadrature pass. The
// "scaled" pair divides H by 2(EG - F^2) and K by EG - F^2 before
// squaring (the hemiellipsoid ratio convention).
struct SurfaceMetrics {
    double area = 0.0;
    double mu_sq = 0.0;
    double nu_sq = 0.0;
    double mu_scaled_sq = 0.0;
    double nu_scaled_sq = 0.0;
};

SurfaceMetrics surface_metrics(const SurfaceSpec &spec,
                               const QuadratureRule &rule, int threads = 1);

// Runs `steps` further minimization steps on top of any layers already
// present (none for a fresh run). Records cover the initial surface and
// every layer, existing ones re-measured with their stored t. On an
// engine error the report comes back partial with status "error".
Report iterate(const SurfaceSpec &spec, int steps, const EngineConfig &config);

// p_ij = 100 (A_i - A_j) / (A_0 - reference) when a reference minimal
// area is given, q_ij = 100 (A_i - A_j) / A_0 otherwise; entries with
// i >= j are zero. Rejects reference >= A_0.
std::vector<std::vector<double>>
percentage_decreases(const std::vector<double> &areas,
                     std::optional<double> reference);

// nu / mu^2; a flat surface (mu^2 = 0) has no defined ratio.
double curvature_ratio(double nu, double mu_sq);

// Displacement added by step n (1-based): x_n - x_{n-1} at (u, v).
std::array<double, 3> displacement_field(const SurfaceSpec &spec, int step,
                                         double u, double v);

// MINSURF_THREADS, default 1.
int thread_count_from_env();

} // namespace minsurf
