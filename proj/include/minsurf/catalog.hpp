#pragma once

#include "minsurf/expr.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/quadrature.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace minsurf {

enum class DirectionMode {
    // Displace along the unnormalized normal x_u x x_v.
    NormalNumerator,
    // Displace along a fixed unit vector k.
    FixedVector,
};

enum class H0Mode {
    // m_n = b H_n with the genuine curvature numerator at every step.
    TrueH,
    // Replace H by 1 for the very first step only, then restore H_n.
    UnitHFirstStep,
    // Replace H by 1 at every step. This variant cannot make progress
    // after the first step (the displacement shape never changes); it
    // exists as a diagnostic.
    UnitHEveryStep,
};

enum class RatioConvention {
    // nu / mu^2 with the raw numerators H_n, K_n.
    RawNumerator,
    // Same ratio with H_n / (2(EG - F^2)) and K_n / (EG - F^2), i.e.
    // the standard curvature formulas fed with numerator-convention
    // magnitudes. The hemiellipsoid results use this scaling.
    MetricScaled,
};

// A base surface with everything the iteration needs: parametrization,
// domain, boundary-vanishing blend, displacement direction, and the
// reference minimal area when one is known.
struct CatalogEntry {
    std::string name;
    std::map<std::string, double> params;
    Rectangle domain;

    // Jets of the base parametrization and of the blend b(u, v).
    std::function<SurfaceJets<double>(double, double, int)> base_jets;
    std::function<Jet<double>(double, double, int)> blend_jets;

    DirectionMode direction = DirectionMode::FixedVector;
    std::array<double, 3> fixed_k{0.0, 0.0, 1.0};

    // Edges of the parameter rectangle carrying prescribed boundary
    // curves; the blend must vanish there. The hemiellipsoid's u-edges
    // collapse to the poles and carry no boundary curve.
    bool boundary_on_u_edges = true;
    bool boundary_on_v_edges = true;
    H0Mode h0_mode = H0Mode::TrueH;
    RatioConvention ratio_convention = RatioConvention::RawNumerator;
    std::optional<double> reference_area; // A_f of the known minimal surface

    // Source expressions, kept for entries loaded from JSON so a report
    // can echo the definition and be resumed.
    struct CustomDef {
        std::array<std::string, 3> components;
        std::string blend;
    };
    std::optional<CustomDef> custom;

    std::array<double, 3> position(double u, double v) const
    {
        auto p = base_jets(u, v, 0);
        return {p.x.value(), p.y.value(), p.z.value()};
    }
};

// Built-in entries: "hemiellipsoid" (params b, c), "hump", "bilinear"
// (param r). Unknown params for an entry are rejected.
CatalogEntry get_entry(const std::string &name,
                       const std::map<std::string, double> &params = {});

std::vector<std::string> catalog_names();

// Custom patch from a JSON document:
//   {"name": ..., "components": [expr, expr, expr],
//    "domain": [u0, u1, v0, v1], "blend": expr,
//    "direction": {"fixed": [kx, ky, kz]} | "normal",
//    "h0_mode": "true_H" | "unit_H_first_step",   (optional)
//    "reference_area": number}                     (optional)
// The blend is verified to vanish on the domain boundary by sampling.
CatalogEntry load_custom(const std::string &json_text);
CatalogEntry load_custom_file(const std::string &path);

// The JSON echo of a custom entry, for report resume.
std::string custom_definition_json(const CatalogEntry &entry);

} // namespace minsurf
