#pragma once

#include <algorithm>
#include <array>

#include "ricciforge/jet.hpp"

// Per-node tensor algebra on jets in N coordinates. Matrices are stored dense
// row-major; three- and four-index objects are flattened with the first index
// slowest.
namespace ricciforge::kernels {

template <int N>
using Mat = std::array<Jet<N>, N * N>;
template <int N>
using T3 = std::array<Jet<N>, N * N * N>;
template <int N>
using T4 = std::array<Jet<N>, N * N * N * N>;

constexpr int ix(int n, int i, int j) { return i * n + j; }
constexpr int ix(int n, int i, int j, int k) { return (i * n + j) * n + k; }
constexpr int ix(int n, int i, int j, int k, int l) { return ((i * n + j) * n + k) * n + l; }

template <int N>
Mat<N> truncated(const Mat<N>& m, int order) {
  Mat<N> r;
  for (int i = 0; i < N * N; ++i) r[i] = m[i].truncated(order);
  return r;
}

/// Inverse of a symmetric positive definite jet matrix (Gauss-Jordan without
/// pivoting).
template <int N>
Mat<N> inverse(const Mat<N>& m) {
  Mat<N> a = m;
  Mat<N> inv;
  const int order = m[0].order();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) inv[ix(N, i, j)] = Jet<N>::constant(i == j ? 1.0 : 0.0, order);
  for (int p = 0; p < N; ++p) {
    const Jet<N> r = reciprocal(a[ix(N, p, p)]);
    for (int j = 0; j < N; ++j) {
      a[ix(N, p, j)] = a[ix(N, p, j)] * r;
      inv[ix(N, p, j)] = inv[ix(N, p, j)] * r;
    }
    for (int i = 0; i < N; ++i) {
      if (i == p) continue;
      const Jet<N> f = a[ix(N, i, p)];
      for (int j = 0; j < N; ++j) {
        a[ix(N, i, j)] -= f * a[ix(N, p, j)];
        inv[ix(N, i, j)] -= f * inv[ix(N, p, j)];
      }
    }
  }
  return inv;
}

/// Gamma_{ij,k} = (d_i g_jk + d_j g_ik - d_k g_ij) / 2, at [i][j][k].
template <int N>
T3<N> christoffel_lower(const Mat<N>& g) {
  std::array<Mat<N>, N> dg;
  for (int a = 0; a < N; ++a)
    for (int i = 0; i < N * N; ++i) dg[a][i] = g[i].d(a);
  T3<N> r;
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        r[ix(N, i, j, k)] = 0.5 * (dg[i][ix(N, j, k)] + dg[j][ix(N, i, k)] - dg[k][ix(N, i, j)]);
        r[ix(N, j, i, k)] = r[ix(N, i, j, k)];
      }
  return r;
}

/// Gamma^k_ij = g^{kl} Gamma_{ij,l}, at [k][i][j].
template <int N>
T3<N> christoffel_upper(const T3<N>& low, const Mat<N>& ginv) {
  T3<N> r;
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j) {
        Jet<N> s = ginv[ix(N, k, 0)] * low[ix(N, i, j, 0)];
        for (int l = 1; l < N; ++l) s += ginv[ix(N, k, l)] * low[ix(N, i, j, l)];
        r[ix(N, k, i, j)] = s;
        r[ix(N, k, j, i)] = s;
      }
  return r;
}

/// R^l_{ijk} = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik, at [l][i][j][k].
template <int N>
T4<N> riemann_up(const T3<N>& G) {
  T4<N> r;
  for (int l = 0; l < N; ++l)
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          Jet<N> s = G[ix(N, l, j, k)].d(i) - G[ix(N, l, i, k)].d(j);
          for (int m = 0; m < N; ++m)
            s += G[ix(N, l, i, m)] * G[ix(N, m, j, k)] - G[ix(N, l, j, m)] * G[ix(N, m, i, k)];
          r[ix(N, l, i, j, k)] = s;
          r[ix(N, l, j, i, k)] = -s;
        }
  for (int l = 0; l < N; ++l)
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) r[ix(N, l, i, i, k)] = Jet<N>::constant(0.0, std::max(0, G[0].order() - 1));
  return r;
}

/// Rm_ijkl = g_km R^m_{ijl}, so that Rm_ijji is the sectional curvature times
/// |d_i ^ d_j|^2.
template <int N>
T4<N> riemann_down(const T4<N>& up, const Mat<N>& g) {
  T4<N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          Jet<N> s = g[ix(N, k, 0)] * up[ix(N, 0, i, j, l)];
          for (int m = 1; m < N; ++m) s += g[ix(N, k, m)] * up[ix(N, m, i, j, l)];
          r[ix(N, i, j, k, l)] = s;
        }
  return r;
}

/// Ric_jl = R^i_{ijl}, straight from the connection.
template <int N>
Mat<N> ricci(const T3<N>& G) {
  Mat<N> r;
  for (int j = 0; j < N; ++j)
    for (int l = j; l < N; ++l) {
      Jet<N> s = G[ix(N, 0, j, l)].d(0) - G[ix(N, 0, 0, l)].d(j);
      for (int i = 1; i < N; ++i) s += G[ix(N, i, j, l)].d(i) - G[ix(N, i, i, l)].d(j);
      for (int i = 0; i < N; ++i)
        for (int m = 0; m < N; ++m) s += G[ix(N, i, i, m)] * G[ix(N, m, j, l)] - G[ix(N, i, j, m)] * G[ix(N, m, i, l)];
      r[ix(N, j, l)] = s;
      r[ix(N, l, j)] = s;
    }
  return r;
}

/// (h . k)_ijkl = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il on plain values.
template <int N>
std::array<double, N * N * N * N> kulkarni_nomizu(const std::array<double, N * N>& h, const std::array<double, N * N>& k) {
  std::array<double, N * N * N * N> r{};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
          r[ix(N, i, j, a, b)] = h[ix(N, i, a)] * k[ix(N, j, b)] + h[ix(N, j, b)] * k[ix(N, i, a)] -
                                 h[ix(N, i, b)] * k[ix(N, j, a)] - h[ix(N, j, a)] * k[ix(N, i, b)];
  return r;
}

template <int N>
std::array<double, N * N> values(const Mat<N>& m) {
  std::array<double, N * N> r;
  for (int i = 0; i < N * N; ++i) r[i] = m[i].value();
  return r;
}

}  // namespace ricciforge::kernels
