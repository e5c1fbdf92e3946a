#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ricciforge/chart.hpp"
#include "ricciforge/grid.hpp"
#include "ricciforge/jet.hpp"
#include "ricciforge/parallel.hpp"
#include "ricciforge/tensor_kernels.hpp"

namespace ricciforge {

constexpr int sym_count(int n) { return n * (n + 1) / 2; }
/// Position of (i, j) in the upper-triangle, row-major component list.
constexpr int sym_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}
/// "g_01" style component key.
std::string component_key(const std::string& prefix, int i, int j);

/// Calls f.template operator()<N>() for the runtime dimension n in 2..4.
template <class F>
decltype(auto) with_dim(int n, F&& f) {
  switch (n) {
    case 2: return f.template operator()<2>();
    case 3: return f.template operator()<3>();
    case 4: return f.template operator()<4>();
  }
  throw SizingError("tensor fields support dimensions 2..4, got " + std::to_string(n));
}

/// Per-node component jets: writes sym_count(NV) jets of at least `order`.
template <int NV>
using ComponentJets = std::function<void(std::size_t node, int order, Jet<NV>* out)>;

/// Symmetric 2-tensor on an n-D grid: component samples plus an on-demand jet
/// source. Sampled fields differentiate by stencils, analytic fields by
/// closed-form jets, derived fields by jet arithmetic on their inputs. Jets are
/// never stored, which keeps large 3-D grids affordable.
class SymTensorFieldN {
 public:
  using Provider = std::variant<ComponentJets<2>, ComponentJets<3>, ComponentJets<4>>;

  SymTensorFieldN() = default;

  /// components[sym_index(n, i, j)][node].
  static SymTensorFieldN sampled(const GridN& grid, std::vector<std::vector<double>> components);

  /// fn(x, out) receives the coordinate jets x[0..NV) and writes the component
  /// jets out[0..sym_count(NV)).
  template <int NV, class F>
  static SymTensorFieldN analytic(const GridN& grid, F fn);

  /// Field whose jets come from `provider` (at most `max_order`); values are
  /// evaluated once at construction.
  static SymTensorFieldN derived(const GridN& grid, Provider provider, Mode mode, int max_order);

  /// Same constant matrix (n x n, row-major) at every node.
  static SymTensorFieldN constant(const GridN& grid, std::span<const double> matrix, Mode mode = Mode::analytic);

  int dim() const { return impl_->grid.dim(); }
  const GridN& grid() const { return impl_->grid; }
  Mode mode() const { return impl_->mode; }
  bool is_analytic() const { return impl_->mode == Mode::analytic; }
  int jet_order() const { return impl_->max_order; }

  double at(std::size_t node, int i, int j) const { return impl_->values[sym_index(dim(), i, j)][node]; }
  std::span<const double> component(int i, int j) const { return impl_->values[sym_index(dim(), i, j)]; }
  const std::vector<std::vector<double>>& components() const { return impl_->values; }
  /// Dense n x n row-major matrix at a node.
  std::vector<double> matrix(std::size_t node) const;

  template <int NV>
  void jets(std::size_t node, int order, Jet<NV>* out) const;
  template <int NV>
  kernels::Mat<NV> jet_matrix(std::size_t node, int order) const;

  /// Same samples, jets from stencils.
  SymTensorFieldN resampled() const { return sampled(grid(), impl_->values); }

 private:
  struct Impl {
    GridN grid;
    std::vector<std::vector<double>> values;
    Provider provider;
    Mode mode = Mode::sampled;
    int max_order = 0;
  };
  explicit SymTensorFieldN(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  void require_order(int order) const;
  std::shared_ptr<const Impl> impl_;
};

/// Riemannian metric: a symmetric field checked positive definite at every
/// node (smallest eigenvalue above 1e-12 times the largest).
class MetricFieldN {
 public:
  explicit MetricFieldN(SymTensorFieldN g);

  const SymTensorFieldN& tensor() const { return g_; }
  int dim() const { return g_.dim(); }
  const GridN& grid() const { return g_.grid(); }
  Mode mode() const { return g_.mode(); }

 private:
  SymTensorFieldN g_;
};

void require_same_grid(const GridN& a, const GridN& b, const char* what);

/// "(i, j, k)" label of a node.
std::string node_label(const GridN& grid, std::size_t node);

/// Eigenvalues of the symmetric matrix a (n x n row-major), ascending.
std::vector<double> symmetric_eigenvalues(std::span<const double> a, int n);
/// Eigenvalues of a relative to the positive definite b, ascending.
std::vector<double> generalized_eigenvalues(std::span<const double> a, std::span<const double> b, int n);

template <int NV, class F>
SymTensorFieldN SymTensorFieldN::analytic(const GridN& grid, F fn) {
  if (grid.dim() != NV) throw SizingError("analytic tensor field dimension does not match grid");
  auto provider = [grid, fn](std::size_t node, int order, Jet<NV>* out) {
    const auto x = grid.coords(node);
    std::array<Jet<NV>, NV> cj;
    for (int a = 0; a < NV; ++a) cj[a] = Jet<NV>::variable(a, x[a], order);
    fn(cj, out);
  };
  return derived(grid, ComponentJets<NV>(provider), Mode::analytic, Jet<NV>::kMaxOrder);
}

template <int NV>
void SymTensorFieldN::jets(std::size_t node, int order, Jet<NV>* out) const {
  require_order(order);
  std::get<ComponentJets<NV>>(impl_->provider)(node, order, out);
}

template <int NV>
kernels::Mat<NV> SymTensorFieldN::jet_matrix(std::size_t node, int order) const {
  std::array<Jet<NV>, sym_count(NV)> c;
  jets<NV>(node, order, c.data());
  kernels::Mat<NV> m;
  for (int i = 0; i < NV; ++i)
    for (int j = 0; j < NV; ++j) m[kernels::ix(NV, i, j)] = c[sym_index(NV, i, j)];
  return m;
}

}  // namespace ricciforge
