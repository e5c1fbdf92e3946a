#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "checks.hpp"
#include "geometry.hpp"
#include "ricciforge/lawson.hpp"

namespace rf = ricciforge;
namespace cli = ricciforge::cli;
using nlohmann::json;

namespace {

struct ParamFlags {
  std::optional<double> c, H;
  std::vector<std::string> b, sign, alpha;
  std::optional<double> eps, tol;
  std::string mode;
};

std::pair<std::string, double> split_assignment(const std::string& s, const char* flag) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw rf::PreconditionError(std::string(flag) + " expects <edge>=<value>, got '" + s + "'");
  const std::string label = s.substr(0, eq), rest = s.substr(eq + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(rest, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != rest.size()) throw rf::PreconditionError(std::string(flag) + ": '" + rest + "' is not a number");
  return {label, v};
}

void apply(const ParamFlags& f, rf::SpaceFormParams& p) {
  if (f.c) p.c = *f.c;
  if (f.H) p.H = *f.H;
  for (const auto& s : f.b) p.boundary[split_assignment(s, "--b").first].b = split_assignment(s, "--b").second;
  for (const auto& s : f.sign) {
    const auto [label, v] = split_assignment(s, "--sign");
    if (!p.boundary.count(label)) throw rf::PreconditionError("--sign " + label + ": no wall there, add --b " + label + "=<b>");
    if (v != 1.0 && v != -1.0) throw rf::PreconditionError("--sign must be +1 or -1");
    p.boundary[label].sign = static_cast<int>(v);
  }
  for (const auto& s : f.alpha) {
    const auto [label, v] = split_assignment(s, "--alpha");
    if (!p.boundary.count(label)) throw rf::PreconditionError("--alpha " + label + ": no wall there, add --b " + label + "=<b>");
    p.boundary[label].alpha = v;
  }
  p.validate();
}

rf::CheckOptions check_options(const ParamFlags& f) { return {f.eps, f.tol}; }

void add_param_flags(CLI::App* app, ParamFlags& f) {
  app->add_option("--c", f.c, "ambient curvature c");
  app->add_option("--H", f.H, "mean curvature H");
  app->add_option("--b", f.b, "wall curvature parameter, <edge>=<value>");
  app->add_option("--sign", f.sign, "wall orientation, <edge>=+1|-1");
  app->add_option("--alpha", f.alpha, "contact angle in radians, <edge>=<value>");
  app->add_option("--eps-mask", f.eps, "mask threshold override");
  app->add_option("--tol", f.tol, "tolerance override for every check");
}

void add_gen_flags(CLI::App* app, cli::GenOptions& g) {
  app->add_option("--nx", g.nx, "nodes along x (2-D generators)");
  app->add_option("--ny", g.ny, "nodes along y (2-D generators)");
  app->add_option("--counts", g.counts, "nodes per axis (n-D generators)")->delimiter(',');
  app->add_option("--extent", g.extent, "half width of plane, sphere-cap and enneper charts");
  app->add_option("--t-min", g.t_min, "catenoid t range start, log-polar-disc s_min");
  app->add_option("--t-max", g.t_max, "catenoid t range end");
  app->add_option("--a", g.a, "catenoid waist radius");
  app->add_option("--k", g.k, "clifford: dimension of the first factor");
  app->add_option("--n", g.n, "dimension of n-D generators");
  app->add_option("--r-min", g.r_min, "flat-disc inner radius");
}

rf::Mode parse_mode(const std::string& s, rf::Mode fallback) {
  if (s.empty()) return fallback;
  if (s == "analytic") return rf::Mode::analytic;
  if (s == "sampled") return rf::Mode::sampled;
  throw rf::PreconditionError("--mode must be analytic or sampled");
}

cli::Geometry resolve(const std::string& source, cli::GenOptions gen, const ParamFlags& f) {
  cli::Geometry g;
  if (std::filesystem::exists(source)) {
    if (f.mode == "analytic") throw rf::PreconditionError("chart files carry samples only; --mode analytic needs a generator");
    g = cli::load_geometry(source);
  } else if (cli::is_generator(source)) {
    gen.mode = parse_mode(f.mode, rf::Mode::analytic);
    g = cli::generate(source, gen);
  } else {
    throw rf::PreconditionError("'" + source + "' is neither a chart file nor a generator");
  }
  apply(f, g.params);
  if (g.hyper) g.hyper->params = g.params;
  return g;
}

rf::Phase parse_phase(const std::string& s) {
  if (s == "free") return rf::Phase::free_phase();
  if (s.rfind("real:", 0) == 0) {
    try {
      return rf::Phase::real_on(rf::edge_from_string(s.substr(5)));
    } catch (const rf::Error&) {
    }
  }
  throw rf::PreconditionError("--phase must be free or real:<edge>");
}

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << j.dump(2) << "\n";
  else
    rf::io::save_json(j, path);
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rf::FormatError("cannot write " + path);
  out << text;
}

void log_reports(const rf::ReportBundle& b) {
  for (const auto& r : b.reports)
    std::cerr << r.check << ": " << rf::to_string(r.status) << " sup " << r.sup << " tol " << r.tol
              << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
}

int exit_code(rf::Status s) { return s == rf::Status::failed ? 1 : 0; }

// Least-squares slope of log(sup) against log(h).
std::optional<double> fitted_order(const std::vector<double>& h, const std::vector<double>& sup) {
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sup[i] > 0) || !std::isfinite(sup[i])) return std::nullopt;
    const double x = std::log(h[i]), y = std::log(sup[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (n < 2 || den == 0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

json order_json(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ricciforge: intrinsic curvature checks and reconstruction on sampled charts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ricciforge 0.1.0");

  cli::GenOptions gen;
  ParamFlags flags;
  std::string name, source, out, csv, phase = "free", report_name, format = "json", report_path;
  std::vector<std::string> checks;
  std::vector<int> grids;
  double c_tilde = 0.0;

  auto* generate = app.add_subcommand("generate", "write a generator chart and its sidecar");
  generate->add_option("name", name, "generator")->required()->check(CLI::IsMember(cli::generator_names()));
  generate->add_option("-o,--out", out, "chart file")->required();
  generate->add_option("--mode", flags.mode, "derivatives of the written geometry (files always store samples)");
  add_gen_flags(generate, gen);

  auto* check = app.add_subcommand("check", "run residual checks on a chart file or generator");
  check->add_option("source", source, "chart file or generator name")->required();
  check->add_option("--checks", checks, "comma separated check names")->delimiter(',');
  check->add_option("--mode", flags.mode, "analytic|sampled (generators only)");
  check->add_option("--out", out, "report file (default stdout)");
  check->add_option("--csv", csv, "residual samples as CSV");
  check->add_option("--phase", phase, "roundtrip phase: free or real:<edge>");
  add_param_flags(check, flags);
  add_gen_flags(check, gen);

  auto* reconstruct = app.add_subcommand("reconstruct", "rebuild phi and A from a 2-D chart");
  reconstruct->add_option("source", source, "chart file or generator name")->required();
  reconstruct->add_option("--phase", phase, "free or real:<edge>");
  reconstruct->add_option("--mode", flags.mode, "analytic|sampled (generators only)");
  reconstruct->add_option("--out", out, "chart file receiving u, phi_re, phi_im, A_xx, A_xy, A_yy");
  reconstruct->add_option("--report", report_path, "report file (default stdout)");
  add_param_flags(reconstruct, flags);
  add_gen_flags(reconstruct, gen);

  auto* correspond = app.add_subcommand("correspond", "cousin parameters and residual invariance");
  correspond->add_option("source", source, "optional chart file or generator name");
  correspond->add_option("--c-tilde", c_tilde, "target ambient curvature")->required();
  correspond->add_option("--mode", flags.mode, "analytic|sampled (generators only)");
  correspond->add_option("--out", out, "report file (default stdout)");
  add_param_flags(correspond, flags);
  add_gen_flags(correspond, gen);

  auto* convergence = app.add_subcommand("convergence", "sup norms of one report over a grid sequence");
  convergence->add_option("name", name, "generator")->required()->check(CLI::IsMember(cli::generator_names()));
  convergence->add_option("--check", report_name, "report name, e.g. ricci_flatness or condition_i")->required();
  convergence->add_option("--grids", grids, "nodes per axis for each run")->required()->delimiter(',');
  convergence->add_option("--mode", flags.mode, "analytic|sampled (default sampled)");
  convergence->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  convergence->add_option("--phase", phase, "roundtrip phase: free or real:<edge>");
  convergence->add_option("--out", out, "output file (default stdout)");
  add_param_flags(convergence, flags);
  add_gen_flags(convergence, gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*generate) {
      gen.mode = parse_mode(flags.mode, rf::Mode::analytic);
      const auto g = cli::generate(name, gen);
      rf::io::save_chart(g.chart_file(), out);
      rf::io::save_json(g.meta, rf::io::sidecar_path(out));
      std::cout << g.meta.dump(2) << "\n";
      return 0;
    }

    if (*check) {
      const auto g = resolve(source, gen, flags);
      if (checks.empty()) checks = cli::default_checks(g);
      const auto run = cli::run_checks(g, checks, check_options(flags), parse_phase(phase));
      json j = rf::io::to_json(run.bundle);
      j["source"] = source;
      j["params"] = rf::io::to_json(g.params);
      j["summary"] = run.summary;
      log_reports(run.bundle);
      emit(j, out);
      if (!csv.empty()) write_text(rf::io::residual_csv(run.bundle), csv);
      return exit_code(run.bundle.status());
    }

    if (*reconstruct) {
      const auto g = resolve(source, gen, flags);
      if (!g.two_d()) throw rf::PreconditionError("reconstruct needs a 2-D chart");
      const auto rt = rf::roundtrip(*g.metric, g.params, parse_phase(phase), check_options(flags));
      json j = rf::io::to_json(rt.reports);
      j["source"] = source;
      j["params"] = rf::io::to_json(g.params);
      j["reconstructed"] = rt.result.has_value();
      if (rt.result) {
        const auto& d = rt.result->diagnostics;
        j["diagnostics"] = {{"base", {d.base.first, d.base.second}},
                            {"path_gap", d.path_gap},
                            {"period_gap", d.period_gap},
                            {"phase_shift", d.phase_shift},
                            {"tol", d.tol}};
        if (!out.empty()) {
          auto f = g.chart_file();
          rf::io::put_scalar(f, "phi_re", rt.result->phi.re);
          rf::io::put_scalar(f, "phi_im", rt.result->phi.im);
          rf::io::put_scalar(f, "A_xx", rt.result->A.axx);
          rf::io::put_scalar(f, "A_xy", rt.result->A.axy);
          rf::io::put_scalar(f, "A_yy", rt.result->A.ayy);
          rf::io::save_chart(f, out);
          json meta = g.meta;
          meta["params"] = rf::io::to_json(g.params);
          meta["reconstruction"] = j["diagnostics"];
          rf::io::save_json(meta, rf::io::sidecar_path(out));
        }
      } else {
        std::cerr << "stopped before reconstruction: flatness " << rf::to_string(rt.reports.find("ricci_flatness").status) << "\n";
      }
      log_reports(rt.reports);
      emit(j, report_path);
      return exit_code(rt.reports.status());
    }

    if (*correspond) {
      rf::SpaceFormParams p;
      std::optional<cli::Geometry> g;
      if (!source.empty()) {
        g = resolve(source, gen, flags);
        p = g->params;
      } else {
        apply(flags, p);
      }
      const auto q = rf::cousin_params(p, c_tilde);
      const auto inv = rf::cousin_involution_check(p, c_tilde);
      json j;
      j["input"] = rf::io::to_json(p);
      j["cousin"] = rf::io::to_json(q);
      j["curvature_sum"] = p.curvature_sum();
      j["involution"] = {{"h_error", inv.h_error}, {"b_error", inv.b_error}, {"tol", inv.tol}, {"pass", inv.passed}};
      bool ok = inv.passed;
      if (g) {
        if (!g->two_d()) throw rf::PreconditionError("correspond compares 2-D residuals; give a 2-D chart");
        const auto r = rf::residual_invariance_check(*g->metric, p, q, check_options(flags));
        json flux = json::array();
        for (const auto& [edge, same] : r.flux_identical) flux.push_back({{"edge", edge}, {"identical", same}});
        j["invariance"] = {{"flatness_identical", r.flatness_identical}, {"flux", flux}, {"pass", r.passed()}};
        ok = ok && r.passed();
      }
      j["pass"] = ok;
      emit(j, out);
      return ok ? 0 : 1;
    }

    if (*convergence) {
      if (grids.size() < 2) throw rf::PreconditionError("--grids needs at least two sizes");
      gen.mode = parse_mode(flags.mode, rf::Mode::sampled);
      std::vector<double> hs, sups;
      json rows = json::array();
      std::string group;
      for (int n : grids) {
        cli::GenOptions o = gen;
        o.nx = o.ny = n;
        o.counts = {n};
        auto g = cli::generate(name, o);
        apply(flags, g.params);
        if (g.hyper) g.hyper->params = g.params;
        group = cli::group_of(report_name, g.two_d());
        const auto run = cli::run_checks(g, {group}, check_options(flags), parse_phase(phase));
        const auto& r = run.bundle.find(report_name);
        const double h = *std::max_element(r.grid.spacing.begin(), r.grid.spacing.end());
        rows.push_back({{"n", n}, {"h", h}, {"sup", r.sup}, {"l2", r.l2}, {"status", rf::to_string(r.status)}});
        hs.push_back(h);
        sups.push_back(r.sup);
        std::cerr << report_name << " n=" << n << " sup " << r.sup << "\n";
      }
      const auto order = fitted_order(hs, sups);
      if (format == "csv") {
        std::ostringstream s;
        s.precision(17);
        s << "n,h,sup,l2,status,pairwise_order\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
          s << rows[i]["n"].get<int>() << ',' << hs[i] << ',' << sups[i] << ',' << rows[i]["l2"].get<double>() << ','
            << rows[i]["status"].get<std::string>() << ',';
          if (i > 0) {
            const auto o = fitted_order({hs[i - 1], hs[i]}, {sups[i - 1], sups[i]});
            if (o) s << *o;
          }
          s << '\n';
        }
        s << "fit,,,,,";
        if (order) s << *order;
        s << '\n';
        if (out.empty() || out == "-")
          std::cout << s.str();
        else
          write_text(s.str(), out);
      } else {
        json j{{"generator", name}, {"check", report_name}, {"mode", rf::to_string(gen.mode)}, {"rows", rows},
               {"order", order_json(order)}};
        emit(j, out);
      }
      return 0;
    }
  } catch (const rf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
