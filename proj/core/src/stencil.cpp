#include "ricciforge/stencil.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace ricciforge {

std::vector<double> fornberg_weights(int k, double x0, std::span<const double> nodes) {
  const int n = static_cast<int>(nodes.size());
  if (n <= k) throw SizingError("fornberg_weights: need more than k nodes");
  // c[j][m]: weight of node j for derivative m
  std::vector<std::vector<double>> c(n, std::vector<double>(k + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, k);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int m = mn; m >= 1; --m) c[i][m] = c1 * (m * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int m = mn; m >= 1; --m) c[j][m] = (c4 * c[j][m] - m * c[j][m - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][k];
  return w;
}

namespace {

// Weights depend only on (k, window start relative to node, window size);
// cache them so large grids do not rerun the recursion per node.
const std::vector<double>& cached_weights(int k, int rel_start, int size) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(k, rel_start, size);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<double> nodes(size);
  for (int i = 0; i < size; ++i) nodes[i] = rel_start + i;
  return cache.emplace(key, fornberg_weights(k, 0.0, nodes)).first->second;
}

}  // namespace

AxisStencils::AxisStencils(int count, bool periodic) : count_(count), periodic_(periodic) {
  max_order_ = -1;
  for (int k = 0; k <= kMaxOrder; ++k) {
    const int need = periodic ? centered_size(k) : shifted_size(k);
    if (count < need) break;
    max_order_ = k;
  }
  table_.resize(max_order_ + 1);
  for (int k = 0; k <= max_order_; ++k) {
    auto& row = table_[k];
    row.resize(count);
    const int cs = centered_size(k);
    const int half = cs / 2;
    for (int i = 0; i < count; ++i) {
      Stencil1D s;
      int start, size;
      if (periodic || (i - half >= 0 && i + half <= count - 1)) {
        start = i - half;
        size = cs;
      } else {
        size = shifted_size(k);
        start = std::clamp(i - size / 2, 0, count - size);
      }
      const auto& w = cached_weights(k, start - i, size);
      for (int q = 0; q < size; ++q) {
        int idx = start + q;
        if (periodic) idx = ((idx % count) + count) % count;
        s.index.push_back(idx);
        s.weight.push_back(w[q]);
      }
      row[i] = std::move(s);
    }
  }
}

}  // namespace ricciforge
