#include "minsurf/catalog.hpp"

#include <cmath>
#include <iostream>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace minsurf {

namespace {

using D = Jet<double>;

double get_param(const std::map<std::string, double> &params,
                 const std::string &key, double fallback)
{
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown_params(const std::map<std::string, double> &params,
                           std::initializer_list<const char *> known,
                           const std::string &entry)
{
    for (const auto &[key, value] : params) {
        bool ok = false;
        for (const char *k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            throw std::invalid_argument("catalog entry '" + entry +
                                        "': unknown parameter '" + key + "'");
        }
    }
}

CatalogEntry make_hemiellipsoid(const std::map<std::string, double> &params)
{
    reject_unknown_params(params, {"b", "c"}, "hemiellipsoid");
    const double b = get_param(params, "b", 1.0);
    const double c = get_param(params, "c", 1.0);

    CatalogEntry e;
    e.name = "hemiellipsoid";
    e.params = {{"b", b}, {"c", c}};
    e.domain = {0.0, std::numbers::pi, 0.0, std::numbers::pi};
    e.base_jets = [b, c](double u, double v, int ord) {
        D su = sin(D::seed_u(u, ord));
        D cu = cos(D::seed_u(u, ord));
        D sv = sin(D::seed_v(v, ord));
        D cv = cos(D::seed_v(v, ord));
        return SurfaceJets<double>{su * cv, b * (su * sv), c * cu};
    };
    e.blend_jets = [](double, double v, int ord) {
        D vv = D::seed_v(v, ord);
        return vv * (D::constant(std::numbers::pi, ord) - vv);
    };
    e.direction = DirectionMode::FixedVector;
    e.fixed_k = {0.0, 1.0, 0.0};
    e.boundary_on_u_edges = false; // u-edges are the poles, not boundary
    e.h0_mode = H0Mode::TrueH;
    e.ratio_convention = RatioConvention::MetricScaled;
    if (b == 1.0 && c == 1.0) {
        // Boundary is the unit circle in the xz-plane; the spanning
        // minimal surface is the flat unit disc.
        e.reference_area = std::numbers::pi;
    } else {
        std::cerr << "warning: no flat reference area is known for the "
                     "hemiellipsoid with b != 1 or c != 1; percentage "
                     "decreases fall back to q_ij\n";
    }
    return e;
}

CatalogEntry make_hump(const std::map<std::string, double> &params)
{
    reject_unknown_params(params, {}, "hump");

    CatalogEntry e;
    e.name = "hump";
    e.domain = {0.0, 1.0, 0.0, 1.0};
    e.base_jets = [](double u, double v, int ord) {
        D uu = D::seed_u(u, ord);
        D vv = D::seed_v(v, ord);
        D one = D::constant(1.0, ord);
        D z = 16.0 * (uu * vv * (one - uu) * (one - vv));
        return SurfaceJets<double>{uu, vv, z};
    };
    e.blend_jets = [](double u, double v, int ord) {
        D uu = D::seed_u(u, ord);
        D vv = D::seed_v(v, ord);
        D one = D::constant(1.0, ord);
        return uu * vv * (one - uu) * (one - vv);
    };
    e.direction = DirectionMode::FixedVector;
    e.fixed_k = {0.0, 0.0, 1.0};
    e.h0_mode = H0Mode::TrueH;
    e.ratio_convention = RatioConvention::RawNumerator;
    e.reference_area = 1.0; // flat unit square
    return e;
}

CatalogEntry make_bilinear(const std::map<std::string, double> &params)
{
    reject_unknown_params(params, {"r"}, "bilinear");
    const double r = get_param(params, "r", 1.0);

    CatalogEntry e;
    e.name = "bilinear";
    e.params = {{"r", r}};
    e.domain = {0.0, 1.0, 0.0, 1.0};
    e.base_jets = [r](double u, double v, int ord) {
        D uu = D::seed_u(u, ord);
        D vv = D::seed_v(v, ord);
        D x = r * (uu + vv - 2.0 * (uu * vv));
        return SurfaceJets<double>{x, vv, uu};
    };
    e.blend_jets = [](double u, double v, int ord) {
        D uu = D::seed_u(u, ord);
        D vv = D::seed_v(v, ord);
        D one = D::constant(1.0, ord);
        return uu * vv * (one - uu) * (one - vv);
    };
    e.direction = DirectionMode::FixedVector;
    e.fixed_k = {-1.0, 0.0, 0.0};
    e.h0_mode = H0Mode::TrueH;
    e.ratio_convention = RatioConvention::RawNumerator;
    return e;
}

void check_blend_vanishes_on_boundary(const CatalogEntry &e, int samples)
{
    const Rectangle &d = e.domain;
    for (int i = 0; i < samples; ++i) {
        const double s = static_cast<double>(i) / (samples - 1);
        const double u = d.u0 + s * (d.u1 - d.u0);
        const double v = d.v0 + s * (d.v1 - d.v0);
        std::vector<double> edges;
        if (e.boundary_on_v_edges) {
            edges.push_back(e.blend_jets(u, d.v0, 0).value());
            edges.push_back(e.blend_jets(u, d.v1, 0).value());
        }
        if (e.boundary_on_u_edges) {
            edges.push_back(e.blend_jets(d.u0, v, 0).value());
            edges.push_back(e.blend_jets(d.u1, v, 0).value());
        }
        for (double bval : edges) {
            if (std::abs(bval) >= 1e-12) {
                throw std::invalid_argument(
                    "custom surface: blend does not vanish on the domain "
                    "boundary (|b| = " + std::to_string(std::abs(bval)) + ")");
            }
        }
    }
}

} // namespace

CatalogEntry get_entry(const std::string &name,
                       const std::map<std::string, double> &params)
{
    if (name == "hemiellipsoid") {
        return make_hemiellipsoid(params);
    }
    if (name == "hump") {
        return make_hump(params);
    }
    if (name == "bilinear") {
        return make_bilinear(params);
    }
    throw std::invalid_argument("unknown catalog entry '" + name +
                                "' (try: hemiellipsoid, hump, bilinear)");
}

std::vector<std::string> catalog_names()
{
    return {"hemiellipsoid", "hump", "bilinear"};
}

CatalogEntry load_custom(const std::string &json_text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error &err) {
        throw std::invalid_argument(std::string("custom surface: bad JSON: ") +
                                    err.what());
    }

    CatalogEntry e;
    e.name = doc.value("name", std::string("custom"));

    const auto comps = doc.at("components");
    if (!comps.is_array() || comps.size() != 3) {
        throw std::invalid_argument(
            "custom surface: 'components' must be an array of 3 expressions");
    }
    CatalogEntry::CustomDef def;
    std::array<Expr, 3> parsed{Expr::parse(comps.at(0).get<std::string>()),
                               Expr::parse(comps.at(1).get<std::string>()),
                               Expr::parse(comps.at(2).get<std::string>())};
    def.components = {comps.at(0).get<std::string>(),
                      comps.at(1).get<std::string>(),
                      comps.at(2).get<std::string>()};

    const auto dom = doc.at("domain");
    if (!dom.is_array() || dom.size() != 4) {
        throw std::invalid_argument(
            "custom surface: 'domain' must be [u0, u1, v0, v1]");
    }
    e.domain = {dom.at(0).get<double>(), dom.at(1).get<double>(),
                dom.at(2).get<double>(), dom.at(3).get<double>()};
    if (!(e.domain.u0 < e.domain.u1) || !(e.domain.v0 < e.domain.v1)) {
        throw std::invalid_argument("custom surface: degenerate domain");
    }

    def.blend = doc.at("blend").get<std::string>();
    Expr blend = Expr::parse(def.blend);

    e.base_jets = [parsed](double u, double v, int ord) {
        return SurfaceJets<double>{parsed[0].eval(u, v, ord),
                                   parsed[1].eval(u, v, ord),
                                   parsed[2].eval(u, v, ord)};
    };
    e.blend_jets = [blend](double u, double v, int ord) {
        return blend.eval(u, v, ord);
    };

    const auto dir = doc.at("direction");
    if (dir.is_string() && dir.get<std::string>() == "normal") {
        e.direction = DirectionMode::NormalNumerator;
    } else if (dir.is_object() && dir.contains("fixed")) {
        const auto k = dir.at("fixed");
        if (!k.is_array() || k.size() != 3) {
            throw std::invalid_argument(
                "custom surface: direction.fixed must be [kx, ky, kz]");
        }
        e.direction = DirectionMode::FixedVector;
        e.fixed_k = {k.at(0).get<double>(), k.at(1).get<double>(),
                     k.at(2).get<double>()};
        const double norm = std::sqrt(e.fixed_k[0] * e.fixed_k[0] +
                                      e.fixed_k[1] * e.fixed_k[1] +
                                      e.fixed_k[2] * e.fixed_k[2]);
        if (std::abs(norm - 1.0) > 1e-9) {
            throw std::invalid_argument(
                "custom surface: direction.fixed must be a unit vector");
        }
    } else {
        throw std::invalid_argument(
            "custom surface: direction must be \"normal\" or {\"fixed\": [...]}");
    }

    const std::string mode = doc.value("h0_mode", std::string("true_H"));
    if (mode == "true_H") {
        e.h0_mode = H0Mode::TrueH;
    } else if (mode == "unit_H_first_step") {
        e.h0_mode = H0Mode::UnitHFirstStep;
    } else {
        throw std::invalid_argument("custom surface: unknown h0_mode '" + mode + "'");
    }

    if (doc.contains("reference_area")) {
        e.reference_area = doc.at("reference_area").get<double>();
    }
    e.ratio_convention = RatioConvention::RawNumerator;
    e.custom = def;

    check_blend_vanishes_on_boundary(e, 64);
    return e;
}

CatalogEntry load_custom_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open custom surface file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_custom(ss.str());
}

std::string custom_definition_json(const CatalogEntry &entry)
{
    if (!entry.custom) {
        return {};
    }
    nlohmann::json doc;
    doc["name"] = entry.name;
    doc["components"] = entry.custom->components;
    doc["domain"] = {entry.domain.u0, entry.domain.u1, entry.domain.v0,
                     entry.domain.v1};
    doc["blend"] = entry.custom->blend;
    if (entry.direction == DirectionMode::NormalNumerator) {
        doc["direction"] = "normal";
    } else {
        doc["direction"] = {{"fixed", entry.fixed_k}};
    }
    doc["h0_mode"] =
        entry.h0_mode == H0Mode::UnitHFirstStep ? "unit_H_first_step" : "true_H";
    if (entry.reference_area) {
        doc["reference_area"] = *entry.reference_area;
    }
    return doc.dump();
}

} // namespace minsurf
