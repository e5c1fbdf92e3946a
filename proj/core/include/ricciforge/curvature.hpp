#pragma once

#include <cstddef>
#include <vector>

#include "ricciforge/chart.hpp"
#include "ricciforge/fieldn.hpp"

namespace ricciforge {

/// g = e^{2u}(dx^2 + dy^2) on a chart.
class ConformalMetric2D {
 public:
  explicit ConformalMetric2D(ScalarField u);

  const ScalarField& u() const { return u_; }
  const GridChart& chart() const { return u_.chart(); }
  Mode mode() const { return u_.mode(); }
  bool is_analytic() const { return u_.is_analytic(); }

 private:
  ScalarField u_;
};

/// K = -e^{-2u} (u_xx + u_yy).
ScalarField gaussian_curvature(const ConformalMetric2D& m);

/// Geodesic curvature of a straight physical edge, k = e^{-u} du/dnu with nu
/// the flat outward normal. Throws PreconditionError on a non-physical edge.
BoundaryTrace geodesic_curvature_boundary(const ConformalMetric2D& m, Edge edge);

/// The same metric as an n = 2 tensor field, jets derived from u.
MetricFieldN to_metric_n(const ConformalMetric2D& m);

/// Gamma^k_ij samples at [node][k][i][j].
struct ChristoffelField {
  MetricFieldN metric;
  std::vector<double> values;

  int dim() const { return metric.dim(); }
  double operator()(std::size_t node, int k, int i, int j) const {
    const int n = dim();
    return values[node * n * n * n + kernels::ix(n, k, i, j)];
  }
};

ChristoffelField christoffel(const MetricFieldN& g);

/// Curvature samples: Rm_ijkl = g(R(d_i, d_j) d_l, d_k), Ric_jl = g^{ik} Rm_ijkl,
/// R = g^{jl} Ric_jl. Storage grows as n^4 per node; meant for inspection on
/// moderate grids.
struct CurvatureTensors {
  ChristoffelField gamma;
  std::vector<double> rm;
  std::vector<double> ric;
  std::vector<double> scalar;

  int dim() const { return gamma.dim(); }
  double riemann(std::size_t node, int i, int j, int k, int l) const {
    const int n = dim();
    return rm[node * n * n * n * n + kernels::ix(n, i, j, k, l)];
  }
  double ricci(std::size_t node, int i, int j) const {
    const int n = dim();
    return ric[node * n * n + kernels::ix(n, i, j)];
  }
};

/// Throws ChartMismatch unless `gamma` was computed from `g`.
CurvatureTensors riemann(const MetricFieldN& g, const ChristoffelField& gamma);

/// Ric as a derived tensor field (jets from g, two orders lower).
SymTensorFieldN ricci_tensor(const MetricFieldN& g);

}  // namespace ricciforge
