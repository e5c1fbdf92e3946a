#include "ricciforge/chart.hpp"

#include <algorithm>
#include <cmath>

namespace ricciforge {

std::string to_string(Edge e) {
  switch (e) {
    case Edge::south: return "south";
    case Edge::north: return "north";
    case Edge::east: return "east";
    case Edge::west: return "west";
  }
  return "?";
}

Edge edge_from_string(const std::string& s) {
  if (s == "south") return Edge::south;
  if (s == "north") return Edge::north;
  if (s == "east") return Edge::east;
  if (s == "west") return Edge::west;
  throw PreconditionError("unknown edge label '" + s + "'");
}

Face edge_face(Edge e) {
  switch (e) {
    case Edge::west: return {0, Side::min};
    case Edge::east: return {0, Side::max};
    case Edge::south: return {1, Side::min};
    case Edge::north: return {1, Side::max};
  }
  return {};
}

std::string to_string(Mode m) { return m == Mode::analytic ? "analytic" : "sampled"; }

namespace {

GridN make_grid(int nx, int ny, double hx, double hy, double x0, double y0, bool px, bool py,
                const std::set<Edge>& edges) {
  std::vector<Face> faces;
  for (Edge e : edges) faces.push_back(edge_face(e));
  if (nx < 4 || ny < 4) throw SizingError("chart needs nx >= 4 and ny >= 4");
  return GridN({Axis{nx, hx, x0, px}, Axis{ny, hy, y0, py}}, faces);
}

}  // namespace

GridChart::GridChart(int nx, int ny, double hx, double hy, double x0, double y0, bool periodic_x, bool periodic_y,
                     std::set<Edge> boundary_edges)
    : grid_(make_grid(nx, ny, hx, hy, x0, y0, periodic_x, periodic_y, boundary_edges)),
      edges_(std::move(boundary_edges)) {}

GridChart GridChart::spanning(int nx, int ny, double x_min, double x_max, double y_min, double y_max,
                              bool periodic_x, bool periodic_y, std::set<Edge> boundary_edges) {
  const double hx = (x_max - x_min) / (periodic_x ? nx : nx - 1);
  const double hy = (y_max - y_min) / (periodic_y ? ny : ny - 1);
  return GridChart(nx, ny, hx, hy, x_min, y_min, periodic_x, periodic_y, std::move(boundary_edges));
}

std::pair<int, int> GridChart::node_at(double x, double y) const {
  const int i = static_cast<int>(std::lround((x - x0()) / hx()));
  const int j = static_cast<int>(std::lround((y - y0()) / hy()));
  if (i < 0 || i >= nx() || j < 0 || j >= ny()) throw PreconditionError("coordinate outside chart");
  return {i, j};
}

std::vector<std::size_t> GridChart::edge_nodes(Edge e) const {
  std::vector<std::size_t> out;
  switch (e) {
    case Edge::south:
      for (int i = 0; i < nx(); ++i) out.push_back(index(i, 0));
      break;
    case Edge::north:
      for (int i = 0; i < nx(); ++i) out.push_back(index(i, ny() - 1));
      break;
    case Edge::west:
      for (int j = 0; j < ny(); ++j) out.push_back(index(0, j));
      break;
    case Edge::east:
      for (int j = 0; j < ny(); ++j) out.push_back(index(nx() - 1, j));
      break;
  }
  return out;
}

ScalarField ScalarField::sampled(const GridChart& chart, std::vector<double> values) {
  if (values.size() != chart.size()) throw SizingError("field length does not match chart node count");
  auto impl = std::make_shared<Impl>(Impl{chart, std::move(values), {}, Mode::sampled, 0, {}});
  const int order = chart.grid().max_jet_order();
  impl->order = order;
  impl->jets.resize(chart.size());
  for (std::size_t n = 0; n < chart.size(); ++n) impl->jets[n] = chart.grid().estimate_jet<2>(impl->values, n, order);
  return ScalarField(std::move(impl));
}

ScalarField ScalarField::analytic(const GridChart& chart, const Analytic2D& fn) {
  std::vector<Jet2> jets(chart.size());
  for (int j = 0; j < chart.ny(); ++j)
    for (int i = 0; i < chart.nx(); ++i)
      jets[chart.index(i, j)] = fn(Jet2::variable(0, chart.x(i)), Jet2::variable(1, chart.y(j)));
  return build(chart, std::move(jets), Mode::analytic, fn);
}

ScalarField ScalarField::from_jets(const GridChart& chart, std::vector<Jet2> jets, Mode mode) {
  return build(chart, std::move(jets), mode, {});
}

ScalarField ScalarField::build(const GridChart& chart, std::vector<Jet2> jets, Mode mode, Analytic2D fn) {
  if (jets.size() != chart.size()) throw SizingError("jet count does not match chart node count");
  std::vector<double> values(jets.size());
  int order = Jet2::kMaxOrder;
  for (std::size_t n = 0; n < jets.size(); ++n) {
    values[n] = jets[n].value();
    order = std::min(order, jets[n].order());
  }
  return ScalarField(std::make_shared<Impl>(Impl{chart, std::move(values), std::move(jets), mode, order, std::move(fn)}));
}

ScalarField ScalarField::constant(const GridChart& chart, double value, Mode mode) {
  return from_jets(chart, std::vector<Jet2>(chart.size(), Jet2::constant(value)), mode);
}

ScalarField ScalarField::sample(const GridChart& chart, const std::function<double(double, double)>& fn) {
  std::vector<double> v(chart.size());
  for (int j = 0; j < chart.ny(); ++j)
    for (int i = 0; i < chart.nx(); ++i) v[chart.index(i, j)] = fn(chart.x(i), chart.y(j));
  return sampled(chart, std::move(v));
}

ComplexField::ComplexField(ScalarField r, ScalarField i) : re(std::move(r)), im(std::move(i)) {
  require_same_chart(re.chart(), im.chart(), "ComplexField");
}

SymTensorField2::SymTensorField2(ScalarField xx, ScalarField xy, ScalarField yy)
    : axx(std::move(xx)), axy(std::move(xy)), ayy(std::move(yy)) {
  require_same_chart(axx.chart(), axy.chart(), "SymTensorField2");
  require_same_chart(axx.chart(), ayy.chart(), "SymTensorField2");
}

void require_same_chart(const GridChart& a, const GridChart& b, const char* what) {
  if (!(a == b)) throw ChartMismatch(std::string(what) + ": fields live on different charts");
}

void require_order(const ScalarField& f, int order, const char* what) {
  if (f.jet_order() < order)
    throw SizingError(std::string(what) + ": needs derivatives of order " + std::to_string(order) +
                      ", field provides " + std::to_string(f.jet_order()));
}

ScalarField laplacian_flat(const ScalarField& f) {
  require_order(f, 2, "laplacian_flat");
  return pointwise([](const Jet2& a) { return a.d(0).d(0) + a.d(1).d(1); }, f);
}

std::pair<ScalarField, ScalarField> gradient_flat(const ScalarField& f) {
  require_order(f, 1, "gradient_flat");
  return {pointwise([](const Jet2& a) { return a.d(0); }, f), pointwise([](const Jet2& a) { return a.d(1); }, f)};
}

ScalarField laplacian_g(const ScalarField& f, const ScalarField& u) {
  require_order(f, 2, "laplacian_g");
  return pointwise([](const Jet2& a, const Jet2& w) { return exp(-2.0 * w) * (a.d(0).d(0) + a.d(1).d(1)); }, f, u);
}

ScalarField grad_norm_sq_g(const ScalarField& f, const ScalarField& u) {
  require_order(f, 1, "grad_norm_sq_g");
  return pointwise(
      [](const Jet2& a, const Jet2& w) {
        const Jet2 fx = a.d(0), fy = a.d(1);
        return exp(-2.0 * w) * (fx * fx + fy * fy);
      },
      f, u);
}

BoundaryTrace normal_derivative(const ScalarField& f, Edge edge, const ScalarField* u) {
  const GridChart& chart = f.chart();
  if (!chart.is_physical(edge)) throw PreconditionError("edge " + to_string(edge) + " is not a physical boundary");
  require_order(f, 1, "normal_derivative");
  if (u) require_same_chart(chart, u->chart(), "normal_derivative");
  const Face face = edge_face(edge);
  const double sign = face.side == Side::max ? 1.0 : -1.0;
  BoundaryTrace t{edge, chart.edge_nodes(edge), {}, chart.edge_spacing(edge)};
  for (std::size_t n : t.nodes) {
    double d = sign * f.jet(n).deriv(face.axis == 0 ? Jet2::Index{1, 0} : Jet2::Index{0, 1});
    if (u) d *= std::exp(-u->at(n));
    t.values.push_back(d);
  }
  return t;
}

BoundaryTrace edge_trace(const ScalarField& f, Edge edge) {
  const GridChart& chart = f.chart();
  BoundaryTrace t{edge, chart.edge_nodes(edge), {}, chart.edge_spacing(edge)};
  for (std::size_t n : t.nodes) t.values.push_back(f.at(n));
  return t;
}

ComplexField dz(const ScalarField& f) {
  auto [fx, fy] = gradient_flat(f);
  return {pointwise([](const Jet2& a) { return 0.5 * a; }, fx), pointwise([](const Jet2& a) { return -0.5 * a; }, fy)};
}

ScalarField cauchy_riemann_residual(const ComplexField& phi) {
  require_order(phi.re, 1, "cauchy_riemann_residual");
  require_order(phi.im, 1, "cauchy_riemann_residual");
  const GridChart& chart = phi.chart();
  std::vector<double> r(chart.size());
  for (std::size_t n = 0; n < chart.size(); ++n) {
    const Jet2& a = phi.re.jet(n);
    const Jet2& b = phi.im.jet(n);
    r[n] = std::abs(a.deriv({1, 0}) - b.deriv({0, 1})) + std::abs(a.deriv({0, 1}) + b.deriv({1, 0}));
  }
  std::vector<Jet2> jets(r.size());
  for (std::size_t n = 0; n < r.size(); ++n) jets[n] = Jet2::constant(r[n], 0);
  return ScalarField::from_jets(chart, std::move(jets), phi.re.is_analytic() && phi.im.is_analytic() ? Mode::analytic
                                                                                                      : Mode::sampled);
}

namespace {

// Trapezoidal integral of v dz between adjacent nodes a and b, step dz.
std::complex<double> segment(const ComplexField& v, std::size_t a, std::size_t b, std::complex<double> step) {
  return 0.5 * (v.at(a) + v.at(b)) * step;
}

std::complex<double> along_x(const ComplexField& v, int j, int i0, int i1) {
  const GridChart& c = v.chart();
  std::complex<double> s = 0.0;
  const int dir = i1 >= i0 ? 1 : -1;
  for (int i = i0; i != i1; i += dir) s += segment(v, c.index(i, j), c.index(i + dir, j), {dir * c.hx(), 0.0});
  return s;
}

std::complex<double> along_y(const ComplexField& v, int i, int j0, int j1) {
  const GridChart& c = v.chart();
  std::complex<double> s = 0.0;
  const int dir = j1 >= j0 ? 1 : -1;
  for (int j = j0; j != j1; j += dir) s += segment(v, c.index(i, j), c.index(i, j + dir), {0.0, dir * c.hy()});
  return s;
}

}  // namespace

std::complex<double> path_integrate(const ComplexField& v, std::pair<int, int> from, std::pair<int, int> to) {
  return along_x(v, from.second, from.first, to.first) + along_y(v, to.first, from.second, to.second);
}

double PathIntegrals::path_gap() const {
  double gap = 0.0;
  for (std::size_t n = 0; n < x_then_y.size(); ++n) gap = std::max(gap, std::abs(x_then_y[n] - y_then_x[n]));
  return gap;
}

PathIntegrals integrate_from(const ComplexField& v, std::pair<int, int> base) {
  const GridChart& c = v.chart();
  const int nx = c.nx(), ny = c.ny();
  const auto [i0, j0] = base;
  // row[j][i]: integral along row j from i0 to i; col[i][j]: along column i from j0 to j.
  std::vector<std::complex<double>> row(c.size()), col(c.size());
  for (int j = 0; j < ny; ++j) {
    row[c.index(i0, j)] = 0.0;
    for (int i = i0 + 1; i < nx; ++i)
      row[c.index(i, j)] = row[c.index(i - 1, j)] + segment(v, c.index(i - 1, j), c.index(i, j), {c.hx(), 0.0});
    for (int i = i0 - 1; i >= 0; --i)
      row[c.index(i, j)] = row[c.index(i + 1, j)] + segment(v, c.index(i + 1, j), c.index(i, j), {-c.hx(), 0.0});
  }
  for (int i = 0; i < nx; ++i) {
    col[c.index(i, j0)] = 0.0;
    for (int j = j0 + 1; j < ny; ++j)
      col[c.index(i, j)] = col[c.index(i, j - 1)] + segment(v, c.index(i, j - 1), c.index(i, j), {0.0, c.hy()});
    for (int j = j0 - 1; j >= 0; --j)
      col[c.index(i, j)] = col[c.index(i, j + 1)] + segment(v, c.index(i, j + 1), c.index(i, j), {0.0, -c.hy()});
  }
  PathIntegrals out;
  out.base = base;
  out.x_then_y.resize(c.size());
  out.y_then_x.resize(c.size());
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const std::size_t n = c.index(i, j);
      out.x_then_y[n] = row[c.index(i, j0)] + col[n];
      out.y_then_x[n] = col[c.index(i0, j)] + row[n];
    }
  if (c.periodic_x()) {
    std::complex<double> loop = along_x(v, j0, 0, nx - 1);
    loop += segment(v, c.index(nx - 1, j0), c.index(0, j0), {c.hx(), 0.0});
    out.period_x = loop;
  }
  if (c.periodic_y()) {
    std::complex<double> loop = along_y(v, i0, 0, ny - 1);
    loop += segment(v, c.index(i0, ny - 1), c.index(i0, 0), {0.0, c.hy()});
    out.period_y = loop;
  }
  return out;
}

}  // namespace ricciforge
