#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ricciforge/errors.hpp"

namespace ricciforge {

/// Finite-difference weights for the k-th derivative at `x0` from samples at
/// `nodes` (Fornberg's recursion). Weights are for unit spacing.
std::vector<double> fornberg_weights(int k, double x0, std::span<const double> nodes);

/// A one-dimensional stencil: offsets relative to the evaluation node (already
/// wrapped for periodic axes, so `node + offset` is a valid index) and weights
/// for unit spacing.
struct Stencil1D {
  std::vector<int> index;  // absolute sample indices along the axis
  std::vector<double> weight;
};

/// Second-order accurate derivative stencils along one axis, for derivative
/// orders 0..max_order. Interior nodes use centered windows; nodes too close to
/// a non-periodic end use the nearest in-range window of k+3 points, one order
/// better than needed so edge errors stay comparable to interior ones.
class AxisStencils {
 public:
  static constexpr int kMaxOrder = 4;

  AxisStencils() = default;
  AxisStencils(int count, bool periodic);

  /// Highest derivative order this axis supports at second-order accuracy.
  int max_order() const { return max_order_; }
  int count() const { return count_; }
  bool periodic() const { return periodic_; }

  const Stencil1D& at(int k, int node) const {
    if (k > max_order_)
      throw SizingError("axis of " + std::to_string(count_) + " nodes too small for derivative order " +
                        std::to_string(k));
    return table_[k][node];
  }

  /// Window size used by centered stencils for derivative order k.
  static int centered_size(int k) { return k == 0 ? 1 : 2 * ((k + 1) / 2) + 1; }
  /// Window size used by shifted (one-sided) stencils for derivative order k.
  static int shifted_size(int k) { return k == 0 ? 1 : k + 3; }

 private:
  int count_ = 0;
  bool periodic_ = false;
  int max_order_ = -1;
  std::vector<std::vector<Stencil1D>> table_;
};

}  // namespace ricciforge
