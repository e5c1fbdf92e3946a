#include "ricciforge/curvature.hpp"

#include <cmath>

namespace ricciforge {

ConformalMetric2D::ConformalMetric2D(ScalarField u) : u_(std::move(u)) {
  for (double v : u_.values())
    if (!std::isfinite(v)) throw PreconditionError("conformal factor is not finite");
}

ScalarField gaussian_curvature(const ConformalMetric2D& m) {
  require_order(m.u(), 2, "gaussian_curvature");
  return pointwise([](const Jet2& u) { return -exp(-2.0 * u) * (u.d(0).d(0) + u.d(1).d(1)); }, m.u());
}

BoundaryTrace geodesic_curvature_boundary(const ConformalMetric2D& m, Edge edge) {
  return normal_derivative(m.u(), edge, &m.u());
}

MetricFieldN to_metric_n(const ConformalMetric2D& m) {
  const ScalarField u = m.u();
  auto provider = [u](std::size_t node, int order, Jet<2>* out) {
    const Jet2 e = exp(2.0 * u.jet(node).truncated(order));
    out[0] = e;
    out[1] = Jet2::constant(0.0, order);
    out[2] = e;
  };
  return MetricFieldN(
      SymTensorFieldN::derived(u.chart().grid(), ComponentJets<2>(provider), u.mode(), u.jet_order()));
}

ChristoffelField christoffel(const MetricFieldN& g) {
  ChristoffelField out{g, {}};
  const int n = g.dim();
  out.values.resize(g.grid().size() * n * n * n);
  with_dim(n, [&]<int N>() {
    parallel_for(g.grid().size(), [&](std::size_t node) {
      const auto gm = g.tensor().jet_matrix<N>(node, 1);
      const auto G = kernels::christoffel_upper<N>(kernels::christoffel_lower<N>(gm), kernels::inverse<N>(gm));
      for (int q = 0; q < N * N * N; ++q) out.values[node * N * N * N + q] = G[q].value();
    });
  });
  return out;
}

CurvatureTensors riemann(const MetricFieldN& g, const ChristoffelField& gamma) {
  require_same_grid(g.grid(), gamma.metric.grid(), "riemann");
  if (g.mode() != gamma.metric.mode()) throw ChartMismatch("riemann: connection computed from a different metric");
  const int n = g.dim();
  const std::size_t size = g.grid().size();
  CurvatureTensors out{gamma, {}, {}, {}};
  out.rm.resize(size * n * n * n * n);
  out.ric.resize(size * n * n);
  out.scalar.resize(size);
  with_dim(n, [&]<int N>() {
    parallel_for(size, [&](std::size_t node) {
      const auto gm = g.tensor().jet_matrix<N>(node, 2);
      const auto ginv = kernels::inverse<N>(gm);
      const auto G = kernels::christoffel_upper<N>(kernels::christoffel_lower<N>(gm), ginv);
      const auto rm = kernels::riemann_down<N>(kernels::riemann_up<N>(G), gm);
      double* r4 = &out.rm[node * N * N * N * N];
      for (int q = 0; q < N * N * N * N; ++q) r4[q] = rm[q].value();
      double* r2 = &out.ric[node * N * N];
      double scalar = 0.0;
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l) {
          double s = 0.0;
          for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) s += ginv[kernels::ix(N, i, k)].value() * r4[kernels::ix(N, i, j, k, l)];
          r2[kernels::ix(N, j, l)] = s;
        }
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l) scalar += ginv[kernels::ix(N, j, l)].value() * r2[kernels::ix(N, j, l)];
      out.scalar[node] = scalar;
    });
  });
  return out;
}

SymTensorFieldN ricci_tensor(const MetricFieldN& g) {
  const int n = g.dim();
  const SymTensorFieldN gt = g.tensor();
  auto provider = with_dim(n, [&]<int N>() -> SymTensorFieldN::Provider {
    return ComponentJets<N>([gt](std::size_t node, int order, Jet<N>* out) {
      const auto gm = gt.jet_matrix<N>(node, order + 2);
      const auto ric =
          kernels::ricci<N>(kernels::christoffel_upper<N>(kernels::christoffel_lower<N>(gm), kernels::inverse<N>(gm)));
      for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) out[sym_index(N, i, j)] = ric[kernels::ix(N, i, j)];
    });
  });
  return SymTensorFieldN::derived(g.grid(), std::move(provider), g.mode(), g.tensor().jet_order() - 2);
}

}  // namespace ricciforge
