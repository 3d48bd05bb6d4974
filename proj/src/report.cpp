#include "minsurf/report.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace minsurf {

namespace {

using nlohmann::json;

json optional_to_json(const std::optional<double> &v)
{
    return v ? json(*v) : json(nullptr);
}

std::optional<double> optional_from_json(const json &j)
{
    return j.is_null() ? std::nullopt : std::optional<double>(j.get<double>());
}

const char *direction_name(DirectionMode m)
{
    return m == DirectionMode::NormalNumerator ? "normal" : "fixed";
}

const char *h0_name(H0Mode m)
{
    switch (m) {
    case H0Mode::TrueH:
        return "true_H";
    case H0Mode::UnitHFirstStep:
        return "unit_H_first_step";
    case H0Mode::UnitHEveryStep:
        return "unit_H_every_step";
    }
    return "true_H";
}

H0Mode h0_from_name(const std::string &name)
{
    if (name == "true_H") {
        return H0Mode::TrueH;
    }
    if (name == "unit_H_first_step") {
        return H0Mode::UnitHFirstStep;
    }
    if (name == "unit_H_every_step") {
        return H0Mode::UnitHEveryStep;
    }
    throw std::invalid_argument("unknown h0_mode '" + name + "'");
}

json spec_config_json(const Report &report)
{
    const CatalogEntry &e = report.spec.entry;
    json cfg;
    cfg["surface"] = e.name;
    cfg["params"] = e.params;
    cfg["domain"] = {e.domain.u0, e.domain.u1, e.domain.v0, e.domain.v1};
    cfg["h0_mode"] = h0_name(e.h0_mode);
    if (e.direction == DirectionMode::NormalNumerator) {
        cfg["direction"] = direction_name(e.direction);
    } else {
        cfg["direction"] = {{"fixed", e.fixed_k}};
    }
    cfg["reference_area"] = optional_to_json(e.reference_area);
    cfg["ratio_convention"] = e.ratio_convention == RatioConvention::MetricScaled
                                  ? "metric_scaled"
                                  : "raw_numerator";
    if (e.custom) {
        cfg["custom"] = json::parse(custom_definition_json(e));
    } else {
        cfg["custom"] = nullptr;
    }
    cfg["quad_order"] = report.config.quad_order;
    cfg["bracket"] = {report.config.bracket[0], report.config.bracket[1]};
    cfg["steps"] = report.spec.layers.size();
    return cfg;
}

std::string hash_string(const json &body)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(body.dump())));
    return std::string("fnv1a:") + buf;
}

// Fixed-width significant-digit formatting for tables.
std::string sig6(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string cell(const std::optional<double> &v)
{
    return v ? sig6(*v) : std::string("-");
}

} // namespace

std::uint64_t fnv1a64(const std::string &bytes)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string report_to_json(const Report &report)
{
    json doc;
    doc["schema"] = "minsurf/report-v1";
    doc["kind"] = "surface";
    doc["config"] = spec_config_json(report);
    doc["status"] = report.status;
    doc["error"] = report.error.empty() ? json(nullptr) : json(report.error);

    json layers = json::array();
    for (const IterationLayer &l : report.spec.layers) {
        layers.push_back(l.t_value);
    }
    doc["layers"] = layers;

    json records = json::array();
    for (const IterationRecord &r : report.records) {
        json jr;
        jr["n"] = r.n;
        jr["t_min"] = optional_to_json(r.t_min);
        jr["mu_sq_coeffs"] = r.mu_sq ? json(r.mu_sq->coeffs()) : json(nullptr);
        jr["mu_sq_value"] = r.mu_sq_value;
        jr["nu"] = r.nu;
        jr["ratio"] = optional_to_json(r.ratio);
        jr["area"] = r.area;
        jr["pct_prev"] = optional_to_json(r.pct_prev);
        jr["pct_total"] = optional_to_json(r.pct_total);
        jr["pct_kind"] = r.pct_is_p ? "p" : "q";
        jr["mu_rms_decrease_pct"] = optional_to_json(r.mu_rms_decrease_pct);
        records.push_back(std::move(jr));
    }
    doc["records"] = records;
    doc["content_hash"] = hash_string(doc);
    return doc.dump(2) + "\n";
}

Report report_from_json(const std::string &json_text)
{
    const json doc = json::parse(json_text);
    if (doc.at("kind").get<std::string>() != "surface") {
        throw std::invalid_argument("report_from_json: not a surface report");
    }

    Report report;
    const json &cfg = doc.at("config");
    const std::string surface = cfg.at("surface").get<std::string>();
    if (!cfg.at("custom").is_null()) {
        report.spec.entry = load_custom(cfg.at("custom").dump());
    } else {
        std::map<std::string, double> params;
        if (cfg.contains("params")) {
            params = cfg.at("params").get<std::map<std::string, double>>();
        }
        report.spec.entry = get_entry(surface, params);
    }
    report.spec.entry.h0_mode = h0_from_name(cfg.at("h0_mode").get<std::string>());
    report.spec.entry.reference_area = optional_from_json(cfg.at("reference_area"));
    report.config.quad_order = cfg.at("quad_order").get<int>();
    report.config.bracket = {cfg.at("bracket").at(0).get<double>(),
                             cfg.at("bracket").at(1).get<double>()};
    report.status = doc.at("status").get<std::string>();
    if (!doc.at("error").is_null()) {
        report.error = doc.at("error").get<std::string>();
    }

    int index = 0;
    for (const auto &t : doc.at("layers")) {
        report.spec.layers.push_back({t.get<double>(), index++});
    }

    for (const auto &jr : doc.at("records")) {
        IterationRecord r;
        r.n = jr.at("n").get<int>();
        r.t_min = optional_from_json(jr.at("t_min"));
        if (!jr.at("mu_sq_coeffs").is_null()) {
            r.mu_sq = Poly{jr.at("mu_sq_coeffs").get<std::vector<double>>()};
        }
        r.mu_sq_value = jr.at("mu_sq_value").get<double>();
        r.nu = jr.at("nu").get<double>();
        r.ratio = optional_from_json(jr.at("ratio"));
        r.area = jr.at("area").get<double>();
        r.pct_prev = optional_from_json(jr.at("pct_prev"));
        r.pct_total = optional_from_json(jr.at("pct_total"));
        r.pct_is_p = jr.at("pct_kind").get<std::string>() == "p";
        r.mu_rms_decrease_pct = optional_from_json(jr.at("mu_rms_decrease_pct"));
        report.records.push_back(std::move(r));
    }
    return report;
}

std::string curve_report_to_json(const CurveReport &report)
{
    json doc;
    doc["schema"] = "minsurf/report-v1";
    doc["kind"] = "curve";
    doc["config"] = {{"steps", report.steps}, {"quad_order", report.quad_order}};
    doc["status"] = report.status;
    doc["error"] = report.error.empty() ? json(nullptr) : json(report.error);

    json records = json::array();
    for (const CurveRecord &r : report.records) {
        json jr;
        jr["n"] = r.n;
        jr["t_min"] = optional_to_json(r.t_min);
        jr["length"] = r.length;
        jr["length_pct"] = optional_to_json(r.length_pct);
        jr["y_coeffs"] = r.y.coeffs();
        records.push_back(std::move(jr));
    }
    doc["records"] = records;
    doc["content_hash"] = hash_string(doc);
    return doc.dump(2) + "\n";
}

CurveReport curve_report_from_json(const std::string &json_text)
{
    const json doc = json::parse(json_text);
    if (doc.at("kind").get<std::string>() != "curve") {
        throw std::invalid_argument("curve_report_from_json: not a curve report");
    }
    CurveReport report;
    report.steps = doc.at("config").at("steps").get<int>();
    report.quad_order = doc.at("config").at("quad_order").get<int>();
    report.status = doc.at("status").get<std::string>();
    if (!doc.at("error").is_null()) {
        report.error = doc.at("error").get<std::string>();
    }
    for (const auto &jr : doc.at("records")) {
        CurveRecord r;
        r.n = jr.at("n").get<int>();
        r.t_min = optional_from_json(jr.at("t_min"));
        r.length = jr.at("length").get<double>();
        r.length_pct = optional_from_json(jr.at("length_pct"));
        r.y = Poly{jr.at("y_coeffs").get<std::vector<double>>()};
        report.records.push_back(std::move(r));
    }
    return report;
}

bool json_is_surface_report(const std::string &json_text)
{
    return json::parse(json_text).at("kind").get<std::string>() == "surface";
}

std::string format_table(const Report &report, TableFormat format)
{
    std::ostringstream out;
    const char *pct_head = report.records.size() > 1 && report.records[1].pct_is_p
                               ? "p_(i-1)i"
                               : "q_(i-1)i";
    if (format == TableFormat::Csv) {
        out << "i,area,pct_prev,ratio,t_min\r\n";
        for (const IterationRecord &r : report.records) {
            out << r.n << ',' << sig6(r.area) << ',' << cell(r.pct_prev) << ','
                << cell(r.ratio) << ',' << cell(r.t_min) << "\r\n";
        }
        return out.str();
    }
    out << "# " << report.spec.entry.name << "  (h0_mode=" << h0_name(report.spec.entry.h0_mode)
        << ", quad=" << report.config.quad_order << ")\n";
    char line[160];
    std::snprintf(line, sizeof line, "%4s %14s %14s %14s %14s\n", "i", "A_i",
                  pct_head, "nu/mu^2", "t_min");
    out << line;
    for (const IterationRecord &r : report.records) {
        std::snprintf(line, sizeof line, "%4d %14s %14s %14s %14s\n", r.n,
                      sig6(r.area).c_str(), cell(r.pct_prev).c_str(),
                      cell(r.ratio).c_str(), cell(r.t_min).c_str());
        out << line;
    }
    return out.str();
}

std::string format_table(const CurveReport &report, TableFormat format)
{
    std::ostringstream out;
    if (format == TableFormat::Csv) {
        out << "i,length,pct_prev,t_min\r\n";
        for (const CurveRecord &r : report.records) {
            out << r.n << ',' << sig6(r.length) << ',' << cell(r.length_pct)
                << ',' << cell(r.t_min) << "\r\n";
        }
        return out.str();
    }
    out << "# curve\n";
    char line[120];
    std::snprintf(line, sizeof line, "%4s %14s %14s %14s\n", "i", "l_i",
                  "l_(i-1)i", "t_min");
    out << line;
    for (const CurveRecord &r : report.records) {
        std::snprintf(line, sizeof line, "%4d %14s %14s %14s\n", r.n,
                      sig6(r.length).c_str(), cell(r.length_pct).c_str(),
                      cell(r.t_min).c_str());
        out << line;
    }
    return out.str();
}

std::string export_mesh(const SurfaceSpec &spec, int step, int resolution,
                        MeshFormat format)
{
    if (step < 0 || static_cast<std::size_t>(step) > spec.layers.size()) {
        throw std::invalid_argument("export_mesh: step out of range");
    }
    if (resolution < 2) {
        throw std::invalid_argument("export_mesh: resolution must be >= 2");
    }

    SurfaceSpec cut = spec;
    cut.layers.resize(static_cast<std::size_t>(step));

    const Rectangle &d = spec.entry.domain;
    const int m = resolution;
    std::ostringstream out;
    out.precision(17);

    if (format == MeshFormat::Obj) {
        out << "# " << spec.entry.name << ", step " << step << ", " << m << "x"
            << m << " parameter grid\n";
        for (int i = 0; i < m; ++i) {
            const double u = d.u0 + (d.u1 - d.u0) * i / (m - 1);
            for (int j = 0; j < m; ++j) {
                const double v = d.v0 + (d.v1 - d.v0) * j / (m - 1);
                SurfaceJets<double> p = evaluate_surface(cut, u, v, 0);
                out << "v " << p.x.value() << ' ' << p.y.value() << ' '
                    << p.z.value() << '\n';
            }
        }
        for (int i = 0; i + 1 < m; ++i) {
            for (int j = 0; j + 1 < m; ++j) {
                const int a = i * m + j + 1; // OBJ indices are 1-based
                out << "f " << a << ' ' << a + m << ' ' << a + m + 1 << ' '
                    << a + 1 << '\n';
            }
        }
        return out.str();
    }

    out << "# u v x y z H K\n";
    for (int i = 0; i < m; ++i) {
        const double u = d.u0 + (d.u1 - d.u0) * i / (m - 1);
        for (int j = 0; j < m; ++j) {
            const double v = d.v0 + (d.v1 - d.v0) * j / (m - 1);
            SurfaceJets<double> p = evaluate_surface(cut, u, v, 2);
            auto mags = fundamental_magnitudes(p);
            const double H = mean_curvature_numerator(mags).value();
            const double K = gaussian_curvature_numerator(mags).value();
            out << u << ' ' << v << ' ' << p.x.value() << ' ' << p.y.value()
                << ' ' << p.z.value() << ' ' << H << ' ' << K << '\n';
        }
        out << '\n';
    }
    return out.str();
}

void write_file_atomic(const std::string &path, const std::string &content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write file: " + tmp);
        }
        out << content;
        if (!out.flush()) {
            throw std::runtime_error("write failed: " + tmp);
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace minsurf
