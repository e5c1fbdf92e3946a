#include "geometry.hpp"

#include <filesystem>
#include <numbers>

namespace ricciforge::cli {

using nlohmann::json;

namespace {

std::vector<int> counts_for(const GenOptions& opt, int n) {
  if (opt.counts.empty()) return std::vector<int>(n, 16);
  if (opt.counts.size() == 1) return std::vector<int>(n, opt.counts[0]);
  if (static_cast<int>(opt.counts.size()) != n)
    throw PreconditionError("need 1 or " + std::to_string(n) + " grid counts, got " + std::to_string(opt.counts.size()));
  return opt.counts;
}

GridChart square(const GenOptions& opt) {
  if (!(opt.extent > 0)) throw PreconditionError("--extent must be positive");
  return GridChart::spanning(opt.nx, opt.ny, -opt.extent, opt.extent, -opt.extent, opt.extent);
}

Geometry two_d(std::string name, ConformalMetric2D m, SpaceFormParams p = {}) {
  Geometry g{std::move(name), std::move(m), std::nullopt, std::move(p), json::object()};
  return g;
}

Geometry n_d(std::string name, HypersurfaceData d) {
  Geometry g{std::move(name), std::nullopt, d, d.params, json::object()};
  return g;
}

}  // namespace

io::ChartFile Geometry::chart_file() const {
  if (metric) {
    auto f = io::chart_file(metric->chart());
    io::put_scalar(f, "u", metric->u());
    return f;
  }
  auto f = io::chart_file(hyper->g.grid());
  io::put_tensor(f, "g", hyper->g.tensor());
  io::put_tensor(f, "A", hyper->A);
  return f;
}

const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names{"plane",           "sphere-cap", "enneper",      "catenoid",
                                              "critical-catenoid", "log-polar-disc", "clifford", "round-sphere",
                                              "flat-disc"};
  return names;
}

bool is_generator(const std::string& name) {
  for (const auto& n : generator_names())
    if (n == name) return true;
  return false;
}

Geometry generate(const std::string& name, const GenOptions& opt) {
  Geometry g;
  json params;
  if (name == "plane") {
    g = two_d(name, plane(square(opt), opt.mode));
    params = {{"nx", opt.nx}, {"ny", opt.ny}, {"extent", opt.extent}};
  } else if (name == "sphere-cap") {
    g = two_d(name, sphere_cap(square(opt), opt.mode), SpaceFormParams{.c = 1.0});
    params = {{"nx", opt.nx}, {"ny", opt.ny}, {"extent", opt.extent}};
  } else if (name == "enneper") {
    g = two_d(name, enneper(square(opt), opt.mode));
    params = {{"nx", opt.nx}, {"ny", opt.ny}, {"extent", opt.extent}};
  } else if (name == "catenoid") {
    if (!(opt.a > 0)) throw PreconditionError("--a must be positive");
    if (!(opt.t_min < opt.t_max)) throw PreconditionError("need --t-min < --t-max");
    g = two_d(name, catenoid(opt.t_min, opt.t_max, opt.nx, opt.ny, opt.a, opt.mode));
    params = {{"nx", opt.nx}, {"ny", opt.ny}, {"t_min", opt.t_min}, {"t_max", opt.t_max}, {"a", opt.a}};
  } else if (name == "critical-catenoid") {
    auto cc = critical_catenoid(opt.nx, opt.ny, opt.mode);
    g = two_d(name, cc.metric, cc.params);
    params = {{"nx", opt.nx}, {"ny", opt.ny}};
    g.meta["T"] = cc.T;
    g.meta["a"] = cc.a;
  } else if (name == "log-polar-disc") {
    if (!(opt.t_min < 0)) throw PreconditionError("log-polar-disc needs --t-min < 0");
    g = two_d(name, log_polar_disc(opt.nx, opt.ny, opt.t_min, opt.mode));
    params = {{"nx", opt.nx}, {"ny", opt.ny}, {"s_min", opt.t_min}};
  } else if (name == "clifford") {
    g = n_d(name, clifford_torus(opt.k, opt.n, counts_for(opt, opt.n), opt.mode));
    params = {{"k", opt.k}, {"n", opt.n}, {"counts", counts_for(opt, opt.n)}};
  } else if (name == "round-sphere") {
    g = n_d(name, round_sphere(opt.n, counts_for(opt, opt.n), opt.mode));
    params = {{"n", opt.n}, {"counts", counts_for(opt, opt.n)}};
  } else if (name == "flat-disc") {
    g = n_d(name, flat_disc_in_ball(opt.n, counts_for(opt, opt.n), opt.r_min, opt.mode));
    params = {{"n", opt.n}, {"counts", counts_for(opt, opt.n)}, {"r_min", opt.r_min}};
  } else {
    throw PreconditionError("unknown generator '" + name + "'");
  }
  g.meta["generator"] = name;
  g.meta["generator_params"] = params;
  g.meta["params"] = io::to_json(g.params);
  return g;
}

Geometry load_geometry(const std::string& path) {
  const auto file = io::load_chart(path);
  Geometry g;
  g.name = path;
  if (file.two_d && file.has("u")) {
    g.metric = io::conformal_metric(file);
  } else {
    const int n = file.grid.dim();
    if (!io::has_tensor(file, "g", n))
      throw FormatError(path + ": needs field \"u\" (2-D) or components g_ij (n-D)");
    const auto gt = io::tensor(file, "g");
    std::vector<double> zero(n * n, 0.0);
    const auto A = io::has_tensor(file, "A", n) ? io::tensor(file, "A")
                                                : SymTensorFieldN::constant(file.grid, zero, Mode::sampled);
    g.hyper = HypersurfaceData{MetricFieldN(gt), A, {}};
  }
  const auto side = io::sidecar_path(path);
  if (std::filesystem::exists(side)) {
    g.meta = io::load_json(side);
    if (g.meta.contains("params")) g.params = io::parse_params(g.meta.at("params"));
  }
  if (g.hyper) g.hyper->params = g.params;
  return g;
}

}  // namespace ricciforge::cli
