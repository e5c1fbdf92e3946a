#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ricciforge/errors.hpp"
#include "ricciforge/jet.hpp"
#include "ricciforge/stencil.hpp"

namespace ricciforge {

struct Axis {
  int count = 0;
  double spacing = 0.0;
  double origin = 0.0;
  bool periodic = false;

  double coord(int i) const { return origin + i * spacing; }
  bool operator==(const Axis&) const = default;
};

enum class Side { min, max };

/// A coordinate face {x_axis = min} or {x_axis = max} of an n-D chart.
struct Face {
  int axis = 0;
  Side side = Side::min;
  bool operator==(const Face&) const = default;
  auto operator<=>(const Face&) const = default;
};

std::string to_string(Face f);
Face face_from_string(const std::string& s);

/// Uniform tensor-product grid in 1..4 dimensions. Axis 0 varies fastest in the
/// flat node index. Faces listed as physical are surface boundary; the rest
/// are chart cuts.
class GridN {
 public:
  GridN() = default;
  GridN(std::vector<Axis> axes, std::vector<Face> physical_faces = {});

  int dim() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int a) const { return axes_[a]; }
  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<Face>& physical_faces() const { return faces_; }
  bool is_physical(Face f) const;
  std::size_t size() const { return size_; }
  std::size_t stride(int a) const { return strides_[a]; }

  std::array<int, 4> multi_index(std::size_t node) const;
  std::size_t flat_index(std::span<const int> mi) const;
  std::array<double, 4> coords(std::size_t node) const;

  /// Highest jet order available from stencils on every axis.
  int max_jet_order() const { return max_order_; }
  const AxisStencils& stencils(int a) const { return (*stencils_)[a]; }

  /// Nodes lying on a face, in flat-index order.
  std::vector<std::size_t> face_nodes(Face f) const;

  /// Jet of sampled values at `node` from second-order finite-difference
  /// estimates of every partial derivative up to `order`.
  template <int NV>
  Jet<NV> estimate_jet(std::span<const double> values, std::size_t node, int order) const;

  bool operator==(const GridN& o) const { return axes_ == o.axes_ && faces_ == o.faces_; }

 private:
  std::vector<Axis> axes_;
  std::vector<Face> faces_;
  std::array<std::size_t, 4> strides_{};
  std::size_t size_ = 0;
  int max_order_ = -1;
  std::shared_ptr<const std::vector<AxisStencils>> stencils_;
};

template <int NV>
Jet<NV> GridN::estimate_jet(std::span<const double> values, std::size_t node, int order) const {
  if (order > max_order_)
    throw SizingError("grid too small for derivative order " + std::to_string(order));
  const auto mi = multi_index(node);
  const auto& t = Jet<NV>::table();
  Jet<NV> jet = Jet<NV>::constant(0.0, order);
  const int n = t.degree_end[order];
  for (int idx = 0; idx < n; ++idx) {
    const auto& alpha = t.alpha[idx];
    std::array<const Stencil1D*, NV> st{};
    double scale = 1.0 / t.factorial[idx];
    for (int v = 0; v < NV; ++v) {
      st[v] = &(*stencils_)[v].at(alpha[v], mi[v]);
      for (int q = 0; q < alpha[v]; ++q) scale /= axes_[v].spacing;
    }
    // Tensor-product stencil sum, innermost axis last.
    double sum = 0.0;
    std::array<std::size_t, NV> pos{};
    std::array<double, NV + 1> w{};
    std::array<std::size_t, NV + 1> base{};
    w[0] = 1.0;
    base[0] = 0;
    int v = 0;
    std::array<std::size_t, NV> k{};
    // iterative odometer over the NV stencil windows
    for (;;) {
      if (v == NV) {
        sum += w[NV] * values[base[NV]];
        --v;
        ++k[v];
      } else if (k[v] < st[v]->index.size()) {
        pos[v] = st[v]->index[k[v]];
        w[v + 1] = w[v] * st[v]->weight[k[v]];
        base[v + 1] = base[v] + pos[v] * strides_[v];
        ++v;
        if (v < NV) k[v] = 0;
        continue;
      } else {
        if (v == 0) break;
        --v;
        ++k[v];
      }
    }
    jet.coeff(idx) = sum * scale;
  }
  return jet;
}

}  // namespace ricciforge
