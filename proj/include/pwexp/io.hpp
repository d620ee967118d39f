#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pwexp/density.hpp"
#include "pwexp/experiments.hpp"
#include "pwexp/maps.hpp"
#include "pwexp/ulam.hpp"

namespace pwexp::io {

/// 17 significant digits ("%.17g"); "inf", "-inf" and "nan" for non-finite values.
std::string fmt17(double v);

/// Writes to a sibling temporary file and renames it over `path`. Throws Io.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// cell_id,area,centroid_x,centroid_y,value,n_vertices,v0x,v0y,...
/// Vertex columns are padded with empty fields up to the largest cell.
std::string density_csv(const PiecewisePolyDensity& f);

/// i,j,weight triples in row-major order.
std::string matrix_csv(const SparseMatrix& m);

std::string sweep_csv(std::span<const SweepRow> rows);
std::string ly_csv(std::span<const LYRow> rows);
std::string orbit_csv(std::span<const OrbitStats> rows);

/// Flat JSON object; non-finite numbers are written as null.
std::string certificate_json(const ConditionCertificate& c);
std::string certificates_json(std::span<const ConditionCertificate> cs);

/// Filled polygons on a 1024x640 canvas with the region fit at 5% margin.
struct SvgHeatmap {
    std::vector<DensityCell> cells;
    double vmin = 0.0;
    double vmax = 0.0;
    std::string title;
};

inline constexpr int kSvgWidth = 1024;
inline constexpr int kSvgHeight = 640;

SvgHeatmap make_heatmap(const PiecewisePolyDensity& f, std::string title = {});
/// "#rrggbb" on a monotone lightness ramp, s clamped to [0, 1].
std::string ramp_color(double s);
/// Throws InvalidInput for an empty heatmap.
std::string render_svg(const SvgHeatmap& h);
/// Throws InvalidInput (no file is written) or Io.
void emit_svg(const SvgHeatmap& h, const std::filesystem::path& path);

}  // namespace pwexp::io
