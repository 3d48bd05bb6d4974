#include "minsurf/curve.hpp"
#include "minsurf/engine.hpp"
#include "minsurf/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

std::map<std::string, double> parse_params(const std::vector<std::string> &kvs)
{
    std::map<std::string, double> params;
    for (const std::string &kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw CLI::ValidationError("--param expects key=value, got '" + kv + "'");
        }
        params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return params;
}

std::array<double, 2> parse_bracket(const std::string &text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw CLI::ValidationError("--bracket expects lo,hi");
    }
    const double lo = std::stod(text.substr(0, comma));
    const double hi = std::stod(text.substr(comma + 1));
    if (!(lo < hi)) {
        throw CLI::ValidationError("--bracket expects lo < hi");
    }
    return {lo, hi};
}

int cmd_run(const std::string &surface, const std::vector<std::string> &params,
            const std::string &custom_file, const std::string &h0_mode,
            int steps, int quad, const std::string &bracket,
            const std::string &resume, const std::string &out)
{
    minsurf::SurfaceSpec spec;
    minsurf::EngineConfig config;
    config.threads = minsurf::thread_count_from_env();

    if (!resume.empty()) {
        minsurf::Report prior =
            minsurf::report_from_json(minsurf::read_file(resume));
        spec = prior.spec;
        config.quad_order = prior.config.quad_order;
        config.bracket = prior.config.bracket;
    } else if (surface == "custom" || !custom_file.empty()) {
        if (custom_file.empty()) {
            throw CLI::ValidationError("--surface custom requires --custom-file");
        }
        spec.entry = minsurf::load_custom_file(custom_file);
    } else {
        spec.entry = minsurf::get_entry(surface, parse_params(params));
    }

    if (!h0_mode.empty()) {
        if (h0_mode == "true") {
            spec.entry.h0_mode = minsurf::H0Mode::TrueH;
        } else if (h0_mode == "unit-first") {
            spec.entry.h0_mode = minsurf::H0Mode::UnitHFirstStep;
        } else if (h0_mode == "unit-every") {
            spec.entry.h0_mode = minsurf::H0Mode::UnitHEveryStep;
        } else {
            throw CLI::ValidationError("--h0-mode must be true, unit-first or unit-every");
        }
    }
    if (quad > 0) {
        if (quad < 4) {
            throw CLI::ValidationError("--quad must be >= 4");
        }
        config.quad_order = quad;
    }
    if (!bracket.empty()) {
        config.bracket = parse_bracket(bracket);
    }

    minsurf::Report report = minsurf::iterate(spec, steps, config);
    minsurf::write_file_atomic(out, minsurf::report_to_json(report));
    if (report.status != "ok") {
        std::cerr << "run failed: " << report.error << "\n";
        std::cerr << "partial report written to " << out << "\n";
        return 1;
    }
    std::cout << minsurf::format_table(report, minsurf::TableFormat::Text);
    std::cout << "report written to " << out << "\n";
    return 0;
}

int cmd_curve(int steps, int quad, const std::string &out)
{
    // The worked example: chi_0(u) = (u, u - u^8).
    minsurf::Poly y0{{0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0}};
    minsurf::CurveReport report;
    report.steps = steps;
    report.quad_order = quad;
    try {
        report.records = minsurf::curve_iterate(y0, steps, quad);
    } catch (const std::exception &err) {
        report.status = "error";
        report.error = err.what();
    }
    minsurf::write_file_atomic(out, minsurf::curve_report_to_json(report));
    if (report.status != "ok") {
        std::cerr << "curve run failed: " << report.error << "\n";
        return 1;
    }
    std::cout << minsurf::format_table(report, minsurf::TableFormat::Text);
    std::cout << "report written to " << out << "\n";
    return 0;
}

int cmd_table(const std::string &file, const std::string &format,
              const std::string &out)
{
    const std::string text = minsurf::read_file(file);
    const minsurf::TableFormat fmt = format == "csv" ? minsurf::TableFormat::Csv
                                                     : minsurf::TableFormat::Text;
    std::string table;
    if (minsurf::json_is_surface_report(text)) {
        table = minsurf::format_table(minsurf::report_from_json(text), fmt);
    } else {
        table = minsurf::format_table(minsurf::curve_report_from_json(text), fmt);
    }
    if (out.empty()) {
        std::cout << table;
    } else {
        minsurf::write_file_atomic(out, table);
    }
    return 0;
}

int cmd_export_mesh(const std::string &file, int step, int res,
                    const std::string &format, const std::string &out)
{
    minsurf::Report report = minsurf::report_from_json(minsurf::read_file(file));
    const minsurf::MeshFormat fmt =
        format == "grid" ? minsurf::MeshFormat::Grid : minsurf::MeshFormat::Obj;
    const std::string mesh =
        minsurf::export_mesh(report.spec, step, res, fmt);
    if (out.empty()) {
        std::cout << mesh;
    } else {
        minsurf::write_file_atomic(out, mesh);
    }
    return 0;
}

int cmd_list()
{
    for (const std::string &name : minsurf::catalog_names()) {
        minsurf::CatalogEntry e = minsurf::get_entry(name);
        std::cout << name << "  domain [" << e.domain.u0 << "," << e.domain.u1
                  << "]x[" << e.domain.v0 << "," << e.domain.v1 << "]";
        if (!e.params.empty()) {
            std::cout << "  params:";
            for (const auto &[k, v] : e.params) {
                std::cout << ' ' << k << '=' << v;
            }
        }
        if (e.reference_area) {
            std::cout << "  A_f=" << *e.reference_area;
        }
        std::cout << "\n";
    }
    std::cout << "custom  (define via --surface custom --custom-file FILE)\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Iterative curvature-based area reduction for parametric "
                 "surfaces with fixed boundaries"};
    app.require_subcommand(1);

    // run
    std::string surface = "bilinear";
    std::vector<std::string> params;
    std::string custom_file, h0_mode, bracket, resume;
    std::string run_out = "report.json";
    int steps = 2;
    int quad = 0;
    auto *run = app.add_subcommand("run", "Iterate the variational algorithm");
    run->add_option("--surface", surface,
                    "hemiellipsoid | hump | bilinear | custom");
    run->add_option("--param", params, "surface parameter, e.g. b=1 (repeatable)");
    run->add_option("--custom-file", custom_file, "JSON definition for --surface custom");
    run->add_option("--h0-mode", h0_mode, "true | unit-first | unit-every");
    run->add_option("--steps", steps, "variational steps to run")->required();
    run->add_option("--quad", quad, "Gauss-Legendre points per axis (default 32)");
    run->add_option("--bracket", bracket, "t search interval lo,hi (default -1,1)");
    run->add_option("--resume", resume, "continue from a prior report");
    run->add_option("--out", run_out, "output report path");

    // curve
    int curve_steps = 8;
    int curve_quad = 64;
    std::string curve_out = "curve.json";
    auto *curve = app.add_subcommand("curve", "1-D analogue: shorten the curve (u, u - u^8)");
    curve->add_option("--steps", curve_steps, "iterations (default 8)");
    curve->add_option("--quad", curve_quad, "quadrature points for lengths");
    curve->add_option("--out", curve_out, "output report path");

    // table
    std::string table_file, table_format = "text", table_out;
    auto *table = app.add_subcommand("table", "Tabulate a report");
    table->add_option("file", table_file, "report JSON")->required();
    table->add_option("--format", table_format, "csv | text");
    table->add_option("--out", table_out, "write to file instead of stdout");

    // export-mesh
    std::string mesh_file, mesh_format = "obj", mesh_out;
    int mesh_step = 0;
    int mesh_res = 33;
    auto *mesh = app.add_subcommand("export-mesh", "Sample a run's surface on a grid");
    mesh->add_option("file", mesh_file, "report JSON")->required();
    mesh->add_option("--step", mesh_step, "surface after this many steps")->required();
    mesh->add_option("--res", mesh_res, "vertices per axis (>= 2)");
    mesh->add_option("--format", mesh_format, "obj | grid");
    mesh->add_option("--out", mesh_out, "write to file instead of stdout");

    auto *list = app.add_subcommand("list", "List built-in surfaces");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(surface, params, custom_file, h0_mode, steps, quad,
                           bracket, resume, run_out);
        }
        if (curve->parsed()) {
            return cmd_curve(curve_steps, curve_quad, curve_out);
        }
        if (table->parsed()) {
            return cmd_table(table_file, table_format, table_out);
        }
        if (mesh->parsed()) {
            return cmd_export_mesh(mesh_file, mesh_step, mesh_res, mesh_format,
                                   mesh_out);
        }
        if (list->parsed()) {
            return cmd_list();
        }
    } catch (const std::exception &err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
