#include "ricciforge/fieldn.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace ricciforge {

std::string component_key(const std::string& prefix, int i, int j) {
  if (i > j) std::swap(i, j);
  return prefix + "_" + std::to_string(i) + std::to_string(j);
}

SymTensorFieldN SymTensorFieldN::sampled(const GridN& grid, std::vector<std::vector<double>> components) {
  const int n = grid.dim();
  if (static_cast<int>(components.size()) != sym_count(n))
    throw SizingError("expected " + std::to_string(sym_count(n)) + " tensor components");
  for (const auto& c : components)
    if (c.size() != grid.size()) throw SizingError("tensor component length does not match grid node count");
  auto impl = std::make_shared<Impl>();
  impl->grid = grid;
  impl->values = std::move(components);
  impl->mode = Mode::sampled;
  impl->max_order = grid.max_jet_order();
  const Impl* raw = impl.get();
  impl->provider = with_dim(n, [&]<int NV>() -> Provider {
    return ComponentJets<NV>([raw](std::size_t node, int order, Jet<NV>* out) {
      for (std::size_t c = 0; c < raw->values.size(); ++c)
        out[c] = raw->grid.estimate_jet<NV>(raw->values[c], node, order);
    });
  });
  return SymTensorFieldN(std::move(impl));
}

SymTensorFieldN SymTensorFieldN::derived(const GridN& grid, Provider provider, Mode mode, int max_order) {
  const int n = grid.dim();
  auto impl = std::make_shared<Impl>();
  impl->grid = grid;
  impl->provider = std::move(provider);
  impl->mode = mode;
  impl->max_order = max_order;
  impl->values.assign(sym_count(n), std::vector<double>(grid.size()));
  with_dim(n, [&]<int NV>() {
    const auto& fn = std::get<ComponentJets<NV>>(impl->provider);
    parallel_for(grid.size(), [&](std::size_t node) {
      std::array<Jet<NV>, sym_count(NV)> out;
      fn(node, 0, out.data());
      for (int c = 0; c < sym_count(NV); ++c) impl->values[c][node] = out[c].value();
    });
  });
  return SymTensorFieldN(std::move(impl));
}

SymTensorFieldN SymTensorFieldN::constant(const GridN& grid, std::span<const double> matrix, Mode mode) {
  const int n = grid.dim();
  if (static_cast<int>(matrix.size()) != n * n) throw SizingError("constant tensor needs n*n entries");
  std::vector<double> m(matrix.begin(), matrix.end());
  Provider p = with_dim(n, [&]<int NV>() -> Provider {
    return ComponentJets<NV>([m](std::size_t, int order, Jet<NV>* out) {
      for (int i = 0; i < NV; ++i)
        for (int j = i; j < NV; ++j) out[sym_index(NV, i, j)] = Jet<NV>::constant(m[i * NV + j], order);
    });
  });
  return derived(grid, std::move(p), mode, Jet<2>::kMaxOrder);
}

std::vector<double> SymTensorFieldN::matrix(std::size_t node) const {
  const int n = dim();
  std::vector<double> m(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = at(node, i, j);
  return m;
}

void SymTensorFieldN::require_order(int order) const {
  if (order > impl_->max_order)
    throw SizingError("tensor field provides derivatives up to order " + std::to_string(impl_->max_order) +
                      ", requested " + std::to_string(order));
}

std::string node_label(const GridN& grid, std::size_t node) {
  const auto mi = grid.multi_index(node);
  std::string s = "(";
  for (int a = 0; a < grid.dim(); ++a) s += (a ? ", " : "") + std::to_string(mi[a]);
  return s + ")";
}

std::vector<double> symmetric_eigenvalues(std::span<const double> a, int n) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a[i * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + n};
}

std::vector<double> generalized_eigenvalues(std::span<const double> a, std::span<const double> b, int n) {
  Eigen::MatrixXd ma(n, n), mb(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ma(i, j) = a[i * n + j];
      mb(i, j) = b[i * n + j];
    }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(ma, mb, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + n};
}

MetricFieldN::MetricFieldN(SymTensorFieldN g) : g_(std::move(g)) {
  const int n = g_.dim();
  for (std::size_t node = 0; node < g_.grid().size(); ++node) {
    const auto ev = symmetric_eigenvalues(g_.matrix(node), n);
    if (!(ev.front() > 1e-12 * ev.back()) || !std::isfinite(ev.back()))
      throw DefinitenessError("metric is not positive definite at node " + node_label(g_.grid(), node));
  }
}

void require_same_grid(const GridN& a, const GridN& b, const char* what) {
  if (!(a == b)) throw ChartMismatch(std::string(what) + ": fields live on different grids");
}

}  // namespace ricciforge
