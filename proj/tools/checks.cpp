#include "checks.hpp"

#include <algorithm>

#include "ricciforge/hyperdim.hpp"
#include "ricciforge/ricci2d.hpp"

namespace ricciforge::cli {

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

ResidualReport zero_report(const ScalarField& f, ZeroSet z, const CheckOptions& opt) {
  std::vector<double> r(f.values().begin(), f.values().end());
  for (auto& v : r) v = std::abs(v);
  const GridChart& c = f.chart();
  auto rep = make_report("zero_set", std::move(r), {}, c.hx() * c.hy(), opt.eps.value_or(default_zero_eps(f)),
                         to_string(f.mode()), grid_info(c));
  rep.status = z == ZeroSet::everywhere_zero ? Status::degenerate : Status::passed;
  rep.note = z == ZeroSet::everywhere_zero ? "degenerate: |A_0|^2 vanishes everywhere (umbilical)"
                                           : "zero set of |A_0|^2: " + to_string(z);
  return rep;
}

void run_2d(const Geometry& g, const std::vector<std::string>& checks, const CheckOptions& opt, Phase phase,
            CheckRun& out) {
  const ConformalMetric2D& m = *g.metric;
  const SpaceFormParams& p = g.params;
  auto& reports = out.bundle.reports;
  const ScalarField K = gaussian_curvature(m);
  for (const auto& name : checks) {
    if (name == "flatness") {
      reports.push_back(ricci_flatness_residual(m, p, opt));
    } else if (name == "moroianu") {
      reports.push_back(moroianu_residual(m, opt));
    } else if (name == "equivalence") {
      reports.push_back(moroianu_flatness_equivalence(m, opt));
    } else if (name == "zeros") {
      const ScalarField f = sff_norm_sq(K, p);
      const ZeroSet z = zero_set_classify(f, opt.eps);
      out.summary["zero_set"] = to_string(z);
      reports.push_back(zero_report(f, z, opt));
    } else if (name == "flux") {
      for (Edge e : m.chart().boundary_edges())
        if (p.boundary.count(to_string(e))) reports.push_back(boundary_flux_residual(m, K, p, e, opt));
    } else if (name == "ricci-boundary") {
      for (auto& r : ricci_with_boundary_check(m, opt).reports) reports.push_back(std::move(r));
    } else if (name == "roundtrip") {
      auto rt = roundtrip(m, p, phase, opt);
      for (auto& r : rt.reports.reports) reports.push_back(std::move(r));
    } else {
      throw PreconditionError("unknown 2-D check '" + name + "'");
    }
  }
}

void run_nd(const Geometry& g, const std::vector<std::string>& checks, const CheckOptions& opt, CheckRun& out) {
  const HypersurfaceData& d = *g.hyper;
  const double c = g.params.c;
  auto& reports = out.bundle.reports;
  std::optional<AbarMetric> abar;
  auto need_abar = [&]() -> const AbarMetric& {
    if (!abar) {
      abar = abar_metric(d.g, c, opt);
      std::size_t counts[3] = {0, 0, 0};
      for (auto cls : abar->classes) ++counts[static_cast<int>(cls)];
      nlohmann::json s;
      for (auto cls : {Definiteness::positive_definite, Definiteness::semidefinite, Definiteness::indefinite})
        s[to_string(cls)] = counts[static_cast<int>(cls)];
      s["min_eigenvalue"] = *std::min_element(abar->min_eigenvalue.begin(), abar->min_eigenvalue.end());
      s["floor"] = abar->floor;
      out.summary["gbar"] = s;
    }
    return *abar;
  };
  for (const auto& name : checks) {
    if (name == "gauss") {
      for (auto& r : gauss_codazzi_residual_ndim(d.g, d.A, c, opt).reports) reports.push_back(std::move(r));
    } else if (name == "minimality") {
      reports.push_back(minimality_check(d.g, d.A, opt));
    } else if (name == "abar") {
      reports.push_back(gbar_compose_residual(need_abar(), d.g, d.A, opt));
    } else if (name == "condition_i") {
      reports.push_back(condition_i_residual(d.g, d.A, need_abar(), opt));
    } else if (name == "condition_ii") {
      reports.push_back(condition_ii_residual(d.g, d.A, need_abar(), c, opt));
    } else if (name == "umbilic") {
      for (Face f : d.g.grid().physical_faces()) {
        if (!g.params.boundary.count(to_string(f))) continue;
        const auto B = face_second_fundamental_form(d.g, f);
        for (auto& r : boundary_umbilic_check(d.g, d.A, B, g.params, opt).reports) reports.push_back(std::move(r));
      }
    } else {
      throw PreconditionError("unknown n-D check '" + name + "'");
    }
  }
}

}  // namespace

const std::vector<std::string>& check_names(bool two_d) {
  static const std::vector<std::string> two{"flatness", "moroianu",       "equivalence", "zeros",
                                            "flux",     "ricci-boundary", "roundtrip"};
  static const std::vector<std::string> many{"gauss", "minimality", "abar", "condition_i", "condition_ii", "umbilic"};
  return two_d ? two : many;
}

std::vector<std::string> default_checks(const Geometry& g) {
  if (g.two_d()) {
    std::vector<std::string> v{"flatness", "moroianu", "zeros"};
    for (Edge e : g.metric->chart().boundary_edges())
      if (g.params.boundary.count(to_string(e))) {
        v.push_back("flux");
        break;
      }
    return v;
  }
  std::vector<std::string> v{"gauss", "minimality", "abar", "condition_i", "condition_ii"};
  for (Face f : g.hyper->g.grid().physical_faces())
    if (g.params.boundary.count(to_string(f))) {
      v.push_back("umbilic");
      break;
    }
  return v;
}

CheckRun run_checks(const Geometry& g, const std::vector<std::string>& checks, const CheckOptions& opt, Phase phase) {
  g.params.validate();
  for (const auto& name : checks)
    if (!contains(check_names(g.two_d()), name))
      throw PreconditionError("check '" + name + "' does not apply to a " + (g.two_d() ? "2-D" : "n-D") + " chart");
  CheckRun out;
  if (g.two_d())
    run_2d(g, checks, opt, phase, out);
  else
    run_nd(g, checks, opt, out);
  return out;
}

std::string group_of(const std::string& report, bool two_d) {
  if (two_d) {
    if (report == "ricci_flatness") return "flatness";
    if (report == "moroianu") return "moroianu";
    if (report == "moroianu_flatness_equivalence") return "equivalence";
    if (report.rfind("boundary_flux", 0) == 0) return "flux";
    if (report.rfind("ricci_", 0) == 0) return "ricci-boundary";
    return "roundtrip";
  }
  if (report == "gauss_ndim" || report == "codazzi_ndim") return "gauss";
  if (report == "gbar_vs_a_compose_a") return "abar";
  if (report == "condition_i" || report == "condition_ii" || report == "minimality") return report;
  if (report.rfind("umbilic_", 0) == 0 || report.rfind("normal_A_", 0) == 0) return "umbilic";
  throw PreconditionError("no n-D check produces a report named '" + report + "'");
}

}  // namespace ricciforge::cli
