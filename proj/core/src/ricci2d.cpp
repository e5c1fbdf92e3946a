#include "ricciforge/ricci2d.hpp"

#include <cstdio>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace ricciforge {

namespace {

// Sampled-mode tolerances are these multiples of h^2.
constexpr double kFlatnessFactor = 200.0;
constexpr double kMoroianuFactor = 500.0;
constexpr double kBoundaryFactor = 20.0;

double pick_tol(const CheckOptions& opt, Mode mode, double analytic, double factor, double h) {
  if (opt.tol) return *opt.tol;
  return mode == Mode::analytic ? analytic : factor * h * h;
}

double sup_abs(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

Mode mode_of(const ScalarField& a, const ScalarField& b) {
  return a.is_analytic() && b.is_analytic() ? Mode::analytic : Mode::sampled;
}

Jet2 laplacian(const Jet2& f) { return f.d(0).d(0) + f.d(1).d(1); }

Jet2 curvature_jet(const Jet2& u) { return -exp(-2.0 * u) * laplacian(u); }

}  // namespace

double mask_threshold(double scale) {
  return std::max(1e-12, 1e3 * std::numeric_limits<double>::epsilon() * scale);
}

GridInfo grid_info(const GridChart& chart) { return {{chart.nx(), chart.ny()}, {chart.hx(), chart.hy()}}; }

double chart_spacing(const GridChart& chart) { return std::max(chart.hx(), chart.hy()); }

ResidualReport field_report(std::string check, const GridChart& chart, std::vector<double> residual,
                            std::vector<std::uint8_t> mask, double tol, Mode mode, std::string degenerate_note) {
  return make_report(std::move(check), std::move(residual), std::move(mask), chart.hx() * chart.hy(), tol,
                     to_string(mode), grid_info(chart), std::move(degenerate_note));
}

ResidualReport edge_report(std::string check, const GridChart& chart, Edge edge, std::vector<double> residual,
                           double tol, Mode mode) {
  auto r = make_report(std::move(check), std::move(residual), {}, chart.edge_spacing(edge), tol, to_string(mode),
                       grid_info(chart));
  r.note = "edge " + to_string(edge);
  return r;
}

ScalarField sff_norm_sq(const ScalarField& K, const SpaceFormParams& p) {
  const double s = p.curvature_sum();
  return pointwise([s](const Jet2& k) { return 2.0 * (s - k); }, K);
}

ResidualReport ricci_flatness_residual(const ConformalMetric2D& m, const SpaceFormParams& p, const CheckOptions& opt) {
  const ScalarField& u = m.u();
  require_order(u, 4, "ricci_flatness_residual");
  const GridChart& chart = m.chart();
  const double s = p.curvature_sum();
  const std::size_t n = chart.size();
  std::vector<Jet2> q(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = s - curvature_jet(u.jet(i));
    scale = std::max(scale, std::abs(q[i].value()));
  }
  const double eps = opt.eps.value_or(mask_threshold(scale));
  std::vector<double> r(n, 0.0);
  std::vector<std::uint8_t> mask(n, 0);
  parallel_for(n, [&](std::size_t i) {
    if (!(q[i].value() > eps)) {
      mask[i] = 1;
      return;
    }
    r[i] = laplacian(log(q[i] * exp(4.0 * u.jet(i)))).value();
  });
  const double tol = pick_tol(opt, m.mode(), 1e-9, kFlatnessFactor, chart_spacing(chart));
  auto rep = field_report("ricci_flatness", chart, std::move(r), std::move(mask), tol, m.mode(),
                          "degenerate: umbilical or wrong (c,H)");
  if (!rep.degenerate()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", eps);
    rep.note = std::string("mask eps ") + buf;
  }
  return rep;
}

ResidualReport moroianu_residual(const ConformalMetric2D& m, const CheckOptions& opt, Operators ops) {
  const ScalarField& u = m.u();
  require_order(u, 4, "moroianu_residual");
  const GridChart& chart = m.chart();
  const std::size_t n = chart.size();
  std::vector<double> r(n);
  const bool flat = ops == Operators::flat;
  parallel_for(n, [&](std::size_t i) {
    const Jet2& w = u.jet(i);
    const Jet2 K = curvature_jet(w);
    const double e = flat ? 1.0 : std::exp(-2.0 * w.value());
    const double k = K.value(), kx = K.deriv({1, 0}), ky = K.deriv({0, 1});
    const double lap = e * (K.deriv({2, 0}) + K.deriv({0, 2}));
    const double grad = e * (kx * kx + ky * ky);
    r[i] = -k * lap + grad + 4.0 * k * k * k;
  });
  const double tol = pick_tol(opt, m.mode(), 1e-9, kMoroianuFactor, chart_spacing(chart));
  auto rep = field_report(flat ? "moroianu_flat_operators" : "moroianu", chart, std::move(r), {}, tol, m.mode());
  return rep;
}

ResidualReport moroianu_flatness_equivalence(const ConformalMetric2D& m, const CheckOptions& opt) {
  const ScalarField& u = m.u();
  require_order(u, 4, "moroianu_flatness_equivalence");
  const GridChart& chart = m.chart();
  const double eps = opt.eps.value_or(1e-6);
  const std::size_t n = chart.size();
  std::vector<double> r(n, 0.0);
  std::vector<std::uint8_t> mask(n, 0);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Jet2& w = u.jet(i);
    const Jet2 K = curvature_jet(w);
    const double k = K.value();
    if (!(k <= -eps)) {
      mask[i] = 1;
      continue;
    }
    ++kept;
    const double e = std::exp(-2.0 * w.value());
    const double kx = K.deriv({1, 0}), ky = K.deriv({0, 1});
    const double lhs = -k * e * (K.deriv({2, 0}) + K.deriv({0, 2})) + e * (kx * kx + ky * ky) + 4.0 * k * k * k;
    const double lap_log = e * laplacian(log(-K)).value();
    r[i] = lhs - k * k * (-lap_log + 4.0 * k);
  }
  if (kept == 0) throw PreconditionError("moroianu_flatness_equivalence: no node with K <= -eps");
  return field_report("moroianu_flatness_equivalence", chart, std::move(r), std::move(mask), opt.tol.value_or(1e-10),
                      m.mode());
}

ResidualReport boundary_flux_residual(const ConformalMetric2D& m, const ScalarField& K, const SpaceFormParams& p,
                                      Edge edge, const CheckOptions& opt) {
  require_same_chart(m.chart(), K.chart(), "boundary_flux_residual");
  const std::string label = to_string(edge);
  const BoundaryRecord& rec = p.record(label);
  const double hbar = p.wall_curvature(label);
  const ScalarField norm = sff_norm_sq(K, p);
  const BoundaryTrace d = normal_derivative(norm, edge, &m.u());
  std::vector<double> r(d.nodes.size());
  for (std::size_t q = 0; q < d.nodes.size(); ++q) r[q] = -d.values[q] - rec.sign * 4.0 * hbar * norm.at(d.nodes[q]);
  const Mode mode = mode_of(m.u(), K);
  const double tol = pick_tol(opt, mode, 1e-8, kBoundaryFactor, chart_spacing(m.chart()));
  return edge_report("boundary_flux_" + to_string(edge), m.chart(), edge, std::move(r), tol, mode);
}

ReportBundle ricci_with_boundary_check(const ConformalMetric2D& m, const CheckOptions& opt) {
  const GridChart& chart = m.chart();
  if (chart.boundary_edges().empty()) throw PreconditionError("ricci_with_boundary_check: chart has no physical edge");
  ReportBundle out;
  auto interior = moroianu_residual(m, opt);
  interior.check = "ricci_interior";
  out.reports.push_back(std::move(interior));
  const ScalarField K = gaussian_curvature(m);
  const double tol = pick_tol(opt, m.mode(), 1e-8, kBoundaryFactor, chart_spacing(chart));
  for (Edge e : chart.boundary_edges()) {
    const BoundaryTrace dk = normal_derivative(K, e, &m.u());
    std::vector<double> neumann(dk.nodes.size());
    for (std::size_t q = 0; q < dk.nodes.size(); ++q) neumann[q] = dk.values[q] + 4.0 * K.at(dk.nodes[q]);
    out.reports.push_back(edge_report("ricci_neumann_" + to_string(e), chart, e, std::move(neumann), tol, m.mode()));
    const BoundaryTrace k = geodesic_curvature_boundary(m, e);
    std::vector<double> geo(k.values.size());
    for (std::size_t q = 0; q < geo.size(); ++q) geo[q] = k.values[q] - 1.0;
    out.reports.push_back(
        edge_report("ricci_geodesic_curvature_" + to_string(e), chart, e, std::move(geo), tol, m.mode()));
  }
  return out;
}

std::string to_string(ZeroSet z) {
  switch (z) {
    case ZeroSet::everywhere_zero: return "everywhere_zero";
    case ZeroSet::no_zeros: return "no_zeros";
    case ZeroSet::isolated: return "isolated";
    case ZeroSet::non_isolated: return "non_isolated";
  }
  return "?";
}

double default_zero_eps(const ScalarField& f) {
  const GridChart& c = f.chart();
  const double h = chart_spacing(c);
  const double extent = std::max(c.hx() * (c.nx() - 1), c.hy() * (c.ny() - 1));
  const double scale = sup_abs(f.values());
  return std::max(mask_threshold(scale), h * h * scale / (extent * extent));
}

ZeroSet zero_set_classify(const ScalarField& f, std::optional<double> eps) {
  const GridChart& c = f.chart();
  const double e = eps.value_or(default_zero_eps(f));
  const std::size_t n = c.size();
  std::vector<std::uint8_t> zero(n);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    zero[i] = std::abs(f.at(i)) <= e;
    count += zero[i];
  }
  if (count == n) return ZeroSet::everywhere_zero;
  if (count == 0) return ZeroSet::no_zeros;
  std::vector<std::uint8_t> seen(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (!zero[start] || seen[start]) continue;
    std::size_t size = 0;
    std::queue<std::size_t> todo;
    todo.push(start);
    seen[start] = 1;
    while (!todo.empty()) {
      const std::size_t cur = todo.front();
      todo.pop();
      ++size;
      const auto [i, j] = c.node(cur);
      const std::pair<int, int> nbrs[] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (auto [a, b] : nbrs) {
        if (c.periodic_x()) a = (a + c.nx()) % c.nx();
        if (c.periodic_y()) b = (b + c.ny()) % c.ny();
        if (a < 0 || a >= c.nx() || b < 0 || b >= c.ny()) continue;
        const std::size_t k = c.index(a, b);
        if (zero[k] && !seen[k]) {
          seen[k] = 1;
          todo.push(k);
        }
      }
    }
    if (size > 1) return ZeroSet::non_isolated;
  }
  return ZeroSet::isolated;
}

BoundaryTrace edge_metric(const ConformalMetric2D& m, Edge edge) {
  BoundaryTrace t = edge_trace(m.u(), edge);
  for (double& v : t.values) v = std::exp(2.0 * v);
  return t;
}

BoundaryTrace edge_second_fundamental_form(const ConformalMetric2D& m, Edge edge) {
  BoundaryTrace k = geodesic_curvature_boundary(m, edge);
  for (std::size_t q = 0; q < k.nodes.size(); ++q) k.values[q] *= std::exp(2.0 * m.u().at(k.nodes[q]));
  return k;
}

BoundaryTrace tangential_component(const SymTensorField2& A, Edge edge) {
  return edge_trace(edge == Edge::east || edge == Edge::west ? A.ayy : A.axx, edge);
}

ResidualReport capillary_identity_residual(const BoundaryTrace& A_tt, const BoundaryTrace& B_tt,
                                           const BoundaryTrace& g_tt, const SpaceFormParams& p,
                                           const GridChart& chart, Mode mode, const CheckOptions& opt) {
  if (A_tt.nodes != g_tt.nodes || B_tt.nodes != g_tt.nodes || A_tt.edge != g_tt.edge || B_tt.edge != g_tt.edge)
    throw ChartMismatch("capillary_identity_residual: traces from different edges");
  p.validate();
  const std::string label = to_string(g_tt.edge);
  const BoundaryRecord& rec = p.record(label);
  const double hbar = p.wall_curvature(label);
  const double ca = std::cos(rec.alpha), sa = std::sin(rec.alpha);
  std::vector<double> r(g_tt.values.size());
  for (std::size_t q = 0; q < r.size(); ++q) r[q] = hbar * g_tt.values[q] - ca * A_tt.values[q] - sa * B_tt.values[q];
  const double tol = pick_tol(opt, mode, 1e-8, kBoundaryFactor, chart_spacing(chart));
  return edge_report("capillary_identity_" + to_string(g_tt.edge), chart, g_tt.edge, std::move(r), tol, mode);
}

}  // namespace ricciforge
