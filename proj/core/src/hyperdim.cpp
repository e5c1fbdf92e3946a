#include "ricciforge/hyperdim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace ricciforge {

namespace {

constexpr double kDefinitenessFactor = 1.0;
constexpr double kConditionFactor = 2.0;
constexpr double kGaussFactor = 2.0;
constexpr double kFaceFactor = 2.0;
constexpr double kComposeFactor = 1.0;

using kernels::ix;

double pick_tol(const CheckOptions& opt, Mode mode, double analytic, double factor, double h) {
  if (opt.tol) return *opt.tol;
  return mode == Mode::analytic ? analytic : factor * h * h;
}

Mode joint(Mode a, Mode b) { return a == Mode::analytic && b == Mode::analytic ? Mode::analytic : Mode::sampled; }

double cell_volume(const GridN& grid) {
  double v = 1.0;
  for (const auto& a : grid.axes()) v *= a.spacing;
  return v;
}

ResidualReport nd_report(std::string check, const GridN& grid, std::vector<double> residual,
                         std::vector<std::uint8_t> mask, double weight, double tol, Mode mode,
                         std::string note = "every sample masked") {
  return make_report(std::move(check), std::move(residual), std::move(mask), weight, tol, to_string(mode),
                     grid_info(grid), std::move(note));
}

void require_dims(const MetricFieldN& g, const SymTensorFieldN& A, const char* what) {
  require_same_grid(g.grid(), A.grid(), what);
}

// A_j^m = g^{mk} A_kj, at [j][m].
template <int N>
kernels::Mat<N> raise(const kernels::Mat<N>& ginv, const kernels::Mat<N>& A) {
  kernels::Mat<N> r;
  for (int j = 0; j < N; ++j)
    for (int m = 0; m < N; ++m) {
      Jet<N> s = ginv[ix(N, m, 0)] * A[ix(N, 0, j)];
      for (int k = 1; k < N; ++k) s += ginv[ix(N, m, k)] * A[ix(N, k, j)];
      r[ix(N, j, m)] = s;
    }
  return r;
}

template <int N>
std::array<double, N * N> value_matrix(const SymTensorFieldN& f, std::size_t node) {
  std::array<double, N * N> m;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m[ix(N, i, j)] = f.at(node, i, j);
  return m;
}

std::string face_label(Face f) { return to_string(f); }

}  // namespace

GridInfo grid_info(const GridN& grid) {
  GridInfo g;
  for (const auto& a : grid.axes()) {
    g.dims.push_back(a.count);
    g.spacing.push_back(a.spacing);
  }
  return g;
}

double grid_spacing(const GridN& grid) {
  double h = 0.0;
  for (const auto& a : grid.axes()) h = std::max(h, a.spacing);
  return h;
}

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive_definite: return "positive_definite";
    case Definiteness::semidefinite: return "semidefinite";
    case Definiteness::indefinite: return "indefinite";
  }
  return "?";
}

std::vector<std::uint8_t> AbarMetric::mask() const {
  std::vector<std::uint8_t> m(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) m[i] = classes[i] != Definiteness::positive_definite;
  return m;
}

AbarMetric abar_metric(const MetricFieldN& g, double c, const CheckOptions& opt) {
  const int n = g.dim();
  const SymTensorFieldN gt = g.tensor();
  const SymTensorFieldN ric = ricci_tensor(g);
  const double k = c * (n - 1);
  auto provider = with_dim(n, [&]<int N>() -> SymTensorFieldN::Provider {
    return ComponentJets<N>([gt, ric, k](std::size_t node, int order, Jet<N>* out) {
      std::array<Jet<N>, sym_count(N)> a, r;
      gt.jets<N>(node, order, a.data());
      ric.jets<N>(node, order, r.data());
      for (int q = 0; q < sym_count(N); ++q) out[q] = k * a[q] - r[q];
    });
  });
  AbarMetric out;
  out.gbar = SymTensorFieldN::derived(g.grid(), std::move(provider), g.mode(), ric.jet_order());
  const std::size_t size = g.grid().size();
  out.min_eigenvalue.resize(size);
  double scale = 1.0;
  for (std::size_t node = 0; node < size; ++node) {
    const auto ev = generalized_eigenvalues(out.gbar.matrix(node), gt.matrix(node), n);
    out.min_eigenvalue[node] = ev.front();
    scale = std::max({scale, std::abs(ev.front()), std::abs(ev.back())});
  }
  const double h = grid_spacing(g.grid());
  out.floor = opt.eps.value_or((g.mode() == Mode::analytic ? 1e-9 : kDefinitenessFactor * h * h) * scale);
  out.classes.resize(size);
  for (std::size_t node = 0; node < size; ++node) {
    const double m = out.min_eigenvalue[node];
    out.classes[node] = m > out.floor    ? Definiteness::positive_definite
                        : m >= -out.floor ? Definiteness::semidefinite
                                          : Definiteness::indefinite;
  }
  return out;
}

SymTensorFieldN a_compose_a(const MetricFieldN& g, const SymTensorFieldN& A) {
  require_dims(g, A, "a_compose_a");
  const int n = g.dim();
  const SymTensorFieldN gt = g.tensor();
  auto provider = with_dim(n, [&]<int N>() -> SymTensorFieldN::Provider {
    return ComponentJets<N>([gt, A](std::size_t node, int order, Jet<N>* out) {
      const auto ginv = kernels::inverse<N>(gt.jet_matrix<N>(node, order));
      const auto a = A.jet_matrix<N>(node, order);
      const auto up = raise<N>(ginv, a);
      for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
          Jet<N> s = a[ix(N, i, 0)] * up[ix(N, j, 0)];
          for (int m = 1; m < N; ++m) s += a[ix(N, i, m)] * up[ix(N, j, m)];
          out[sym_index(N, i, j)] = s;
        }
    });
  });
  return SymTensorFieldN::derived(g.grid(), std::move(provider), joint(g.mode(), A.mode()),
                                  std::min(gt.jet_order(), A.jet_order()));
}

FourTensorField kulkarni_nomizu(const SymTensorFieldN& h, const SymTensorFieldN& k) {
  require_same_grid(h.grid(), k.grid(), "kulkarni_nomizu");
  FourTensorField out{h.grid(), h.dim(), {}};
  const std::size_t size = h.grid().size();
  with_dim(h.dim(), [&]<int N>() {
    out.values.resize(size * N * N * N * N);
    parallel_for(size, [&](std::size_t node) {
      const auto r = kernels::kulkarni_nomizu<N>(value_matrix<N>(h, node), value_matrix<N>(k, node));
      std::copy(r.begin(), r.end(), out.values.begin() + node * N * N * N * N);
    });
  });
  return out;
}

ResidualReport condition_i_residual(const MetricFieldN& g, const SymTensorFieldN& A, const AbarMetric& gbar,
                                    const CheckOptions& opt) {
  require_dims(g, A, "condition_i_residual");
  require_same_grid(g.grid(), gbar.gbar.grid(), "condition_i_residual");
  const std::size_t size = g.grid().size();
  const auto mask = gbar.mask();
  std::vector<double> r(size, 0.0);
  with_dim(g.dim(), [&]<int N>() {
    parallel_for(size, [&](std::size_t node) {
      if (mask[node]) return;
      const auto gm = g.tensor().jet_matrix<N>(node, 1);
      const auto ginv = kernels::inverse<N>(gm);
      const auto G = kernels::christoffel_upper<N>(kernels::christoffel_lower<N>(gm), ginv);
      const auto Gbar = kernels::christoffel_lower<N>(gbar.gbar.jet_matrix<N>(node, 1));
      const auto a = A.jet_matrix<N>(node, 1);
      const auto up = raise<N>(ginv, a);
      double worst = 0.0;
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          // (nabla_i A^)_j^m
          std::array<double, N> v{};
          for (int m = 0; m < N; ++m) {
            double s = up[ix(N, j, m)].d(i).value();
            for (int l = 0; l < N; ++l) s += G[ix(N, m, i, l)].value() * up[ix(N, j, l)].value();
            v[m] = s;
          }
          for (int k = 0; k < N; ++k) {
            double rhs = 0.0;
            for (int m = 0; m < N; ++m) rhs += a[ix(N, k, m)].value() * v[m];
            worst = std::max(worst, std::abs(Gbar[ix(N, i, j, k)].value() - rhs));
          }
        }
      r[node] = worst;
    });
  });
  const Mode mode = joint(g.mode(), A.mode());
  const double tol = pick_tol(opt, mode, 1e-9, kConditionFactor, grid_spacing(g.grid()));
  return nd_report("condition_i", g.grid(), std::move(r), mask, cell_volume(g.grid()), tol, mode,
                   "degenerate: gbar is nowhere positive definite");
}

ResidualReport condition_ii_residual(const MetricFieldN& g, const SymTensorFieldN& A, const AbarMetric& gbar,
                                     double c, const CheckOptions& opt) {
  require_dims(g, A, "condition_ii_residual");
  require_same_grid(g.grid(), gbar.gbar.grid(), "condition_ii_residual");
  const std::size_t size = g.grid().size();
  const auto mask = gbar.mask();
  std::vector<double> r(size, 0.0);
  with_dim(g.dim(), [&]<int N>() {
    parallel_for(size, [&](std::size_t node) {
      if (mask[node]) return;
      const auto gb = gbar.gbar.jet_matrix<N>(node, 2);
      const auto G = kernels::christoffel_upper<N>(kernels::christoffel_lower<N>(gb), kernels::inverse<N>(gb));
      const auto rm = kernels::riemann_down<N>(kernels::riemann_up<N>(G), gb);
      const auto gv = kernels::values<N>(gb);
      const auto av = value_matrix<N>(A, node);
      const auto gg = kernels::kulkarni_nomizu<N>(gv, gv);
      const auto aa = kernels::kulkarni_nomizu<N>(av, av);
      double worst = 0.0;
      for (int q = 0; q < N * N * N * N; ++q)
        worst = std::max(worst, std::abs(rm[q].value() - 0.5 * gg[q] - 0.5 * c * aa[q]));
      r[node] = worst;
    });
  });
  const Mode mode = joint(g.mode(), A.mode());
  const double tol = pick_tol(opt, mode, 1e-8, kConditionFactor, grid_spacing(g.grid()));
  return nd_report("condition_ii", g.grid(), std::move(r), mask, cell_volume(g.grid()), tol, mode,
                   "degenerate: gbar is nowhere positive definite");
}

ReportBundle gauss_codazzi_residual_ndim(const MetricFieldN& g, const SymTensorFieldN& A, double c,
                                         const CheckOptions& opt) {
  require_dims(g, A, "gauss_codazzi_residual_ndim");
  const std::size_t size = g.grid().size();
  std::vector<double> gauss(size), codazzi(size);
  with_dim(g.dim(), [&]<int N>() {
    parallel_for(size, [&](std::size_t node) {
      const auto gm = g.tensor().jet_matrix<N>(node, 2);
      const auto G = kernels::christoffel_upper<N>(kernels::christoffel_lower<N>(gm), kernels::inverse<N>(gm));
      const auto rm = kernels::riemann_down<N>(kernels::riemann_up<N>(G), gm);
      const auto gv = kernels::values<N>(gm);
      const auto av = value_matrix<N>(A, node);
      const auto gg = kernels::kulkarni_nomizu<N>(gv, gv);
      const auto aa = kernels::kulkarni_nomizu<N>(av, av);
      double worst = 0.0;
      for (int q = 0; q < N * N * N * N; ++q)
        worst = std::max(worst, std::abs(rm[q].value() - 0.5 * c * gg[q] - 0.5 * aa[q]));
      gauss[node] = worst;

      const auto a = A.jet_matrix<N>(node, 1);
      auto nabla = [&](int i, int j, int k) {
        double s = a[ix(N, j, k)].d(i).value();
        for (int l = 0; l < N; ++l)
          s -= G[ix(N, l, i, j)].value() * av[ix(N, l, k)] + G[ix(N, l, i, k)].value() * av[ix(N, j, l)];
        return s;
      };
      worst = 0.0;
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
          for (int k = 0; k < N; ++k) worst = std::max(worst, std::abs(nabla(i, j, k) - nabla(j, i, k)));
      codazzi[node] = worst;
    });
  });
  const Mode mode = joint(g.mode(), A.mode());
  const double h = grid_spacing(g.grid());
  ReportBundle out;
  out.reports.push_back(nd_report("gauss_ndim", g.grid(), std::move(gauss), {}, cell_volume(g.grid()),
                                  pick_tol(opt, mode, 1e-9, kGaussFactor, h), mode));
  out.reports.push_back(nd_report("codazzi_ndim", g.grid(), std::move(codazzi), {}, cell_volume(g.grid()),
                                  pick_tol(opt, mode, 1e-9, kGaussFactor, h), mode));
  return out;
}

ResidualReport gbar_compose_residual(const AbarMetric& gbar, const MetricFieldN& g, const SymTensorFieldN& A,
                                     const CheckOptions& opt) {
  require_dims(g, A, "gbar_compose_residual");
  require_same_grid(g.grid(), gbar.gbar.grid(), "gbar_compose_residual");
  const SymTensorFieldN aa = a_compose_a(g, A);
  const int n = g.dim();
  const std::size_t size = g.grid().size();
  std::vector<double> r(size, 0.0);
  for (std::size_t node = 0; node < size; ++node)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) r[node] = std::max(r[node], std::abs(gbar.gbar.at(node, i, j) - aa.at(node, i, j)));
  const Mode mode = joint(g.mode(), A.mode());
  return nd_report("gbar_vs_a_compose_a", g.grid(), std::move(r), {}, cell_volume(g.grid()),
                   pick_tol(opt, mode, 1e-9, kComposeFactor, grid_spacing(g.grid())), mode);
}

ResidualReport minimality_check(const MetricFieldN& g, const SymTensorFieldN& A, const CheckOptions& opt) {
  require_dims(g, A, "minimality_check");
  const int n = g.dim();
  const std::size_t size = g.grid().size();
  std::vector<double> r(size);
  for (std::size_t node = 0; node < size; ++node) {
    Eigen::MatrixXd gm(n, n), am(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        gm(i, j) = g.tensor().at(node, i, j);
        am(i, j) = A.at(node, i, j);
      }
    r[node] = gm.llt().solve(am).trace();
  }
  const Mode mode = joint(g.mode(), A.mode());
  return nd_report("minimality", g.grid(), std::move(r), {}, cell_volume(g.grid()), opt.tol.value_or(1e-10), mode);
}

FaceTrace face_second_fundamental_form(const MetricFieldN& g, Face face) {
  const GridN& grid = g.grid();
  if (face.axis >= grid.dim()) throw PreconditionError("face " + to_string(face) + " does not exist on this grid");
  if (!grid.is_physical(face)) throw PreconditionError("face " + to_string(face) + " is not physical");
  FaceTrace out{face, grid.face_nodes(face), {}};
  out.values.resize(out.nodes.size());
  const double s = face.side == Side::max ? 1.0 : -1.0;
  const int ax = face.axis;
  with_dim(g.dim(), [&]<int N>() {
    parallel_for(out.nodes.size(), [&](std::size_t q) {
      const auto gm = g.tensor().jet_matrix<N>(out.nodes[q], 1);
      const auto low = kernels::christoffel_lower<N>(gm);
      const auto ginv = kernels::values<N>(kernels::inverse<N>(gm));
      std::array<double, N> nu;
      const double norm = std::sqrt(ginv[ix(N, ax, ax)]);
      for (int l = 0; l < N; ++l) nu[l] = s * ginv[ix(N, l, ax)] / norm;
      std::vector<double> B(N * N, 0.0);
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
          if (a == ax || b == ax) continue;
          double v = 0.0;
          for (int l = 0; l < N; ++l) v -= nu[l] * low[ix(N, a, b, l)].value();
          B[ix(N, a, b)] = v;
        }
      out.values[q] = std::move(B);
    });
  });
  return out;
}

ReportBundle boundary_umbilic_check(const MetricFieldN& g, const SymTensorFieldN& A, const FaceTrace& B,
                                    const SpaceFormParams& p, const CheckOptions& opt) {
  require_dims(g, A, "boundary_umbilic_check");
  const GridN& grid = g.grid();
  const int n = g.dim();
  const Face face = B.face;
  if (!grid.is_physical(face)) throw PreconditionError("face " + to_string(face) + " is not physical");
  const std::string label = face_label(face);
  const BoundaryRecord& rec = p.record(label);
  const double hbar = p.wall_curvature(label);
  const double s = face.side == Side::max ? 1.0 : -1.0;
  const int ax = face.axis;

  std::vector<double> umb(B.nodes.size()), normal(B.nodes.size());
  for (std::size_t q = 0; q < B.nodes.size(); ++q) {
    const std::size_t node = B.nodes[q];
    const auto gm = g.tensor().matrix(node);
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = gm[ix(n, i, j)];
    const Eigen::MatrixXd Ginv = G.inverse();
    Eigen::VectorXd nu = s * Ginv.col(ax) / std::sqrt(Ginv(ax, ax));
    double worst = 0.0, worst_a = 0.0;
    for (int a = 0; a < n; ++a) {
      if (a == ax) continue;
      for (int b = 0; b < n; ++b) {
        if (b == ax) continue;
        worst = std::max(worst, std::abs(B.values[q][ix(n, a, b)] - rec.sign * hbar * G(a, b)));
      }
      double an = 0.0;
      for (int l = 0; l < n; ++l) an += A.at(node, a, l) * nu(l);
      worst_a = std::max(worst_a, std::abs(an));
    }
    umb[q] = worst;
    normal[q] = worst_a;
  }
  double area = 1.0;
  for (int a = 0; a < n; ++a)
    if (a != ax) area *= grid.axis(a).spacing;
  const double h = grid_spacing(grid);
  ReportBundle out;
  auto r1 = nd_report("umbilic_" + label, grid, std::move(umb), {}, area,
                      pick_tol(opt, g.mode(), 1e-8, kFaceFactor, h), g.mode());
  r1.note = "face " + label;
  auto r2 = nd_report("normal_A_" + label, grid, std::move(normal), {}, area, opt.tol.value_or(1e-10),
                      joint(g.mode(), A.mode()));
  r2.note = "face " + label;
  out.reports.push_back(std::move(r1));
  out.reports.push_back(std::move(r2));
  return out;
}

}  // namespace ricciforge
