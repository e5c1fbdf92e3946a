#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ricciforge/grid.hpp"
#include "ricciforge/jet.hpp"

namespace ricciforge {

/// Chart edges. West/east are x = min/max, south/north are y = min/max.
enum class Edge { south, north, east, west };

std::string to_string(Edge e);
Edge edge_from_string(const std::string& s);
Face edge_face(Edge e);

/// How a field's derivatives are obtained: from closed-form jets (analytic) or
/// from finite-difference stencils on samples (sampled). Derived fields are
/// analytic only when every input is.
enum class Mode { sampled, analytic };

std::string to_string(Mode m);

/// Rectangular isothermal chart with uniform spacing. Node (i, j) sits at
/// (x0 + i*hx, y0 + j*hy); flat index j*nx + i.
class GridChart {
 public:
  GridChart(int nx, int ny, double hx, double hy, double x0 = 0.0, double y0 = 0.0, bool periodic_x = false,
            bool periodic_y = false, std::set<Edge> boundary_edges = {});

  /// Chart with nx x ny nodes spanning [x_min, x_max] x [y_min, y_max]. A
  /// periodic direction spans one period with the end point omitted.
  static GridChart spanning(int nx, int ny, double x_min, double x_max, double y_min, double y_max,
                            bool periodic_x = false, bool periodic_y = false, std::set<Edge> boundary_edges = {});

  int nx() const { return grid_.axis(0).count; }
  int ny() const { return grid_.axis(1).count; }
  double hx() const { return grid_.axis(0).spacing; }
  double hy() const { return grid_.axis(1).spacing; }
  double x0() const { return grid_.axis(0).origin; }
  double y0() const { return grid_.axis(1).origin; }
  bool periodic_x() const { return grid_.axis(0).periodic; }
  bool periodic_y() const { return grid_.axis(1).periodic; }
  const std::set<Edge>& boundary_edges() const { return edges_; }
  bool is_physical(Edge e) const { return edges_.count(e) > 0; }

  std::size_t size() const { return grid_.size(); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx() + i; }
  std::pair<int, int> node(std::size_t idx) const { return {static_cast<int>(idx % nx()), static_cast<int>(idx / nx())}; }
  double x(int i) const { return x0() + i * hx(); }
  double y(int j) const { return y0() + j * hy(); }
  /// Inverse of (x(i), y(j)); exact on node coordinates.
  std::pair<int, int> node_at(double x, double y) const;
  /// Node nearest the chart center.
  std::pair<int, int> center_node() const { return {(nx() - 1) / 2, (ny() - 1) / 2}; }

  /// Nodes along an edge, ordered by increasing tangential coordinate.
  std::vector<std::size_t> edge_nodes(Edge e) const;
  /// Spacing along an edge.
  double edge_spacing(Edge e) const { return (e == Edge::east || e == Edge::west) ? hy() : hx(); }

  const GridN& grid() const { return grid_; }
  bool operator==(const GridChart& o) const { return grid_ == o.grid_ && edges_ == o.edges_; }

 private:
  GridN grid_;
  std::set<Edge> edges_;
};

/// Closed-form field: receives the coordinate jets x, y and returns the jet of
/// the field at that point.
using Analytic2D = std::function<Jet2(const Jet2& x, const Jet2& y)>;

/// Real field on a chart: one sample per node plus a per-node jet (value and
/// partial derivatives up to order 4 where available). Immutable; copies share
/// storage.
class ScalarField {
 public:
  static ScalarField sampled(const GridChart& chart, std::vector<double> values);
  static ScalarField analytic(const GridChart& chart, const Analytic2D& fn);
  static ScalarField from_jets(const GridChart& chart, std::vector<Jet2> jets, Mode mode);
  static ScalarField constant(const GridChart& chart, double value, Mode mode = Mode::analytic);
  /// Sampled field from a coordinate function (values only).
  static ScalarField sample(const GridChart& chart, const std::function<double(double, double)>& fn);

  const GridChart& chart() const { return impl_->chart; }
  Mode mode() const { return impl_->mode; }
  bool is_analytic() const { return impl_->mode == Mode::analytic; }
  std::span<const double> values() const { return impl_->values; }
  double operator()(int i, int j) const { return impl_->values[chart().index(i, j)]; }
  double at(std::size_t idx) const { return impl_->values[idx]; }
  const Jet2& jet(std::size_t idx) const { return impl_->jets[idx]; }
  std::span<const Jet2> jets() const { return impl_->jets; }
  /// Lowest jet order over all nodes.
  int jet_order() const { return impl_->order; }
  const Analytic2D* callback() const { return impl_->fn ? &impl_->fn : nullptr; }

  /// Same samples, jets re-estimated from the samples by stencils.
  ScalarField resampled() const { return sampled(chart(), impl_->values); }

 private:
  struct Impl {
    GridChart chart;
    std::vector<double> values;
    std::vector<Jet2> jets;
    Mode mode = Mode::sampled;
    int order = 0;
    Analytic2D fn;
  };
  static ScalarField build(const GridChart& chart, std::vector<Jet2> jets, Mode mode, Analytic2D fn);
  explicit ScalarField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct ComplexField {
  ScalarField re;
  ScalarField im;

  ComplexField(ScalarField r, ScalarField i);
  const GridChart& chart() const { return re.chart(); }
  std::complex<double> at(std::size_t idx) const { return {re.at(idx), im.at(idx)}; }
  ComplexField resampled() const { return {re.resampled(), im.resampled()}; }
};

/// Symmetric 2-tensor in chart coordinates.
struct SymTensorField2 {
  ScalarField axx;
  ScalarField axy;
  ScalarField ayy;

  SymTensorField2(ScalarField xx, ScalarField xy, ScalarField yy);
  const GridChart& chart() const { return axx.chart(); }
};

/// Values of some quantity along one chart edge.
struct BoundaryTrace {
  Edge edge{};
  std::vector<std::size_t> nodes;
  std::vector<double> values;
  double spacing = 0.0;
};

void require_same_chart(const GridChart& a, const GridChart& b, const char* what);

/// Pointwise jet map over fields sharing one chart. The result is analytic
/// when every input is.
template <class F, class... Fields>
ScalarField pointwise(F&& f, const ScalarField& first, const Fields&... rest) {
  (require_same_chart(first.chart(), rest.chart(), "pointwise"), ...);
  const bool analytic = first.is_analytic() && (rest.is_analytic() && ... && true);
  const std::size_t n = first.chart().size();
  std::vector<Jet2> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(first.jet(i), rest.jet(i)...);
  return ScalarField::from_jets(first.chart(), std::move(out), analytic ? Mode::analytic : Mode::sampled);
}

/// Throws SizingError unless every input carries jets of at least `order`.
void require_order(const ScalarField& f, int order, const char* what);

ScalarField laplacian_flat(const ScalarField& f);
std::pair<ScalarField, ScalarField> gradient_flat(const ScalarField& f);
/// Laplace-Beltrami operator of g = e^{2u}(dx^2 + dy^2).
ScalarField laplacian_g(const ScalarField& f, const ScalarField& u);
/// |grad f|^2 with respect to g = e^{2u}(dx^2 + dy^2).
ScalarField grad_norm_sq_g(const ScalarField& f, const ScalarField& u);
/// Outward normal derivative along a physical edge; with u supplied, the unit
/// normal of g = e^{2u}(dx^2 + dy^2) is used (a factor e^{-u}).
BoundaryTrace normal_derivative(const ScalarField& f, Edge edge, const ScalarField* u = nullptr);
/// Restriction of a field to an edge.
BoundaryTrace edge_trace(const ScalarField& f, Edge edge);
/// d/dz = (d/dx - i d/dy) / 2.
ComplexField dz(const ScalarField& f);
/// |d_x Re - d_y Im| + |d_y Re + d_x Im| per node.
ScalarField cauchy_riemann_residual(const ComplexField& phi);

/// Complex line integral of v dz along the staircase path that first moves in
/// x, then in y. Trapezoidal rule on samples; periodic directions are not
/// wrapped (the chart is treated as cut).
std::complex<double> path_integrate(const ComplexField& v, std::pair<int, int> from, std::pair<int, int> to);

/// Integrals of v dz from one base node to every node, along both staircase
/// orders, plus the loop integrals around periodic directions.
struct PathIntegrals {
  std::pair<int, int> base;
  std::vector<std::complex<double>> x_then_y;
  std::vector<std::complex<double>> y_then_x;
  std::optional<std::complex<double>> period_x;  // loop along x through base row
  std::optional<std::complex<double>> period_y;  // loop along y through base column
  /// max |x_then_y - y_then_x| over the chart.
  double path_gap() const;
};

PathIntegrals integrate_from(const ComplexField& v, std::pair<int, int> base);

}  // namespace ricciforge
