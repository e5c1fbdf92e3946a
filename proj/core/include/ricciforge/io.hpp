#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ricciforge/chart.hpp"
#include "ricciforge/curvature.hpp"
#include "ricciforge/fieldn.hpp"
#include "ricciforge/params.hpp"
#include "ricciforge/report.hpp"

namespace ricciforge::io {

/// Sampled fields on one grid, as stored in a chart file. 2-D files use the
/// keys nx/ny/hx/hy/x0/y0/periodic_x/periodic_y/boundary_edges; n-D files use
/// dims/spacing/origin/periodic/boundary_faces. Samples are flat with axis 0
/// fastest (row-major, y outer, in 2-D).
struct ChartFile {
  GridN grid;
  std::vector<Edge> edges;  // 2-D only, in file order
  std::map<std::string, std::vector<double>> fields;
  bool two_d = true;

  GridChart chart() const;
  const std::vector<double>& field(const std::string& name) const;
  bool has(const std::string& name) const { return fields.count(name) > 0; }
};

ChartFile chart_file(const GridChart& chart);
/// n-D header; `edges` of a 2-D grid are written as faces.
ChartFile chart_file(const GridN& grid);

ChartFile parse_chart(const nlohmann::json& j);
nlohmann::json to_json(const ChartFile& f);

/// Canonical text: compact JSON with a trailing newline. Loading and saving
/// reproduces the bytes.
std::string dump(const nlohmann::json& j);
ChartFile load_chart(const std::filesystem::path& path);
void save_chart(const ChartFile& f, const std::filesystem::path& path);
nlohmann::json load_json(const std::filesystem::path& path);
void save_json(const nlohmann::json& j, const std::filesystem::path& path);

/// "<out>.meta.json" next to a chart file.
std::filesystem::path sidecar_path(const std::filesystem::path& chart_path);

/// Field "u" as a sampled conformal factor.
ConformalMetric2D conformal_metric(const ChartFile& f);
void put_scalar(ChartFile& f, const std::string& name, const ScalarField& s);
/// Components prefix_ij, i <= j.
void put_tensor(ChartFile& f, const std::string& prefix, const SymTensorFieldN& t);
SymTensorFieldN tensor(const ChartFile& f, const std::string& prefix);
bool has_tensor(const ChartFile& f, const std::string& prefix, int n);

/// {"c", "H", "boundary": {label: {"b", "sign", "alpha"}}}; carried sums are
/// not stored.
nlohmann::json to_json(const SpaceFormParams& p);
SpaceFormParams parse_params(const nlohmann::json& j);

nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const ReportBundle& b);
/// check,index,residual,masked rows for every report.
std::string residual_csv(const ReportBundle& b);

}  // namespace ricciforge::io
