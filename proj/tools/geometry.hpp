#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ricciforge/io.hpp"
#include "ricciforge/surfaces.hpp"

namespace ricciforge::cli {

/// Generator knobs shared by every command that builds a geometry.
struct GenOptions {
  int nx = 65;
  int ny = 64;
  std::vector<int> counts;  // n-D generators; empty means 16 per axis
  double extent = 1.0;      // plane, sphere-cap, enneper: [-extent, extent]^2
  double t_min = -1.0;
  double t_max = 1.0;
  double a = 1.0;
  int k = 1;
  int n = 3;
  double r_min = 0.5;
  Mode mode = Mode::analytic;
};

/// A 2-D conformal chart or an n-D hypersurface, with the parameters it was
/// built for.
struct Geometry {
  std::string name;
  std::optional<ConformalMetric2D> metric;
  std::optional<HypersurfaceData> hyper;
  SpaceFormParams params;
  nlohmann::json meta = nlohmann::json::object();

  bool two_d() const { return metric.has_value(); }
  /// Sample values written to a chart file.
  io::ChartFile chart_file() const;
};

const std::vector<std::string>& generator_names();
bool is_generator(const std::string& name);
/// Throws PreconditionError on an unknown name.
Geometry generate(const std::string& name, const GenOptions& opt);
/// Sampled geometry from a chart file; parameters come from the sidecar when
/// there is one.
Geometry load_geometry(const std::string& path);

}  // namespace ricciforge::cli
