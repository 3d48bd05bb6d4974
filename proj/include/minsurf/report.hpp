#pragma once

#include "minsurf/curve.hpp"
#include "minsurf/engine.hpp"

#include <string>

namespace minsurf {

// Reports are plain JSON with a content hash over everything except the
// hash itself and are byte-identical across repeated runs of the same
// config: doubles serialize shortest-round-trip, keys are sorted, and
// no wall-clock data is recorded. The report doubles as run state:
// layers plus the config echo are enough to rebuild the SurfaceSpec and
// resume.

std::string report_to_json(const Report &report);
Report report_from_json(const std::string &json_text);

struct CurveReport {
    int steps = 0;
    int quad_order = 64;
    std::vector<CurveRecord> records;
    std::string status = "ok";
    std::string error;
};

std::string curve_report_to_json(const CurveReport &report);
CurveReport curve_report_from_json(const std::string &json_text);

// True for a surface report, false for a curve report.
bool json_is_surface_report(const std::string &json_text);

// Summary tables: columns i, A_i (or l_i), consecutive percentage
// decrease, nu/mu^2, t_min. CSV is RFC-4180 with '.' decimals and six
// significant digits.
enum class TableFormat { Text, Csv };
std::string format_table(const Report &report, TableFormat format);
std::string format_table(const CurveReport &report, TableFormat format);

// Mesh of the surface after `step` layers on an m x m uniform parameter
// grid including the domain edges.
//   obj:  vertices in row-major (u, v) order plus quad faces
//   grid: "u v x y z H K" per sample, blank line between u-rows
enum class MeshFormat { Obj, Grid };
std::string export_mesh(const SurfaceSpec &spec, int step, int resolution,
                        MeshFormat format);

// Write-temp-then-rename so readers never observe a partial file.
void write_file_atomic(const std::string &path, const std::string &content);
std::string read_file(const std::string &path);

std::uint64_t fnv1a64(const std::string &bytes);

} // namespace minsurf
