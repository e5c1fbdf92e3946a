#include "ricciforge/surfaces.hpp"

#include <cmath>
#include <numbers>

namespace ricciforge {

namespace {

using std::numbers::pi;

ScalarField make(const GridChart& chart, const Analytic2D& fn, Mode mode) {
  ScalarField f = ScalarField::analytic(chart, fn);
  return mode == Mode::analytic ? f : f.resampled();
}

SymTensorFieldN finish(SymTensorFieldN f, Mode mode) { return mode == Mode::analytic ? f : f.resampled(); }

struct SphereFactor {
  int dim;
  double radius;
  double lambda;
};

// Axes for a factor: dim - 1 polar angles then one periodic azimuth.
void factor_axes(int dim, const std::vector<int>& counts, std::size_t& next, std::vector<Axis>& axes) {
  for (int a = 0; a < dim; ++a, ++next) {
    const int n = counts.at(next);
    if (a + 1 < dim)
      axes.push_back({n, (pi - 2 * kPolarMargin) / (n - 1), kPolarMargin, false});
    else
      axes.push_back({n, 2 * pi / n, 0.0, true});
  }
}

// Diagonal metric of a product of round spheres, and lambda_f g_f per factor.
HypersurfaceData product_of_spheres(const std::vector<SphereFactor>& factors, const std::vector<int>& counts,
                                    double c, Mode mode) {
  int n = 0;
  for (const auto& f : factors) n += f.dim;
  if (static_cast<int>(counts.size()) != n) throw PreconditionError("need one grid count per axis");
  std::vector<Axis> axes;
  std::size_t next = 0;
  for (const auto& f : factors) factor_axes(f.dim, counts, next, axes);
  const GridN grid(axes);
  return with_dim(n, [&]<int N>() {
    auto diag = [factors](const std::array<Jet<N>, N>& x, std::array<Jet<N>, N>& d, std::array<double, N>& lam) {
      int axis = 0;
      for (const auto& f : factors) {
        Jet<N> w = Jet<N>::constant(f.radius * f.radius, x[0].order());
        for (int a = 0; a < f.dim; ++a, ++axis) {
          d[axis] = w;
          lam[axis] = f.lambda;
          if (a + 1 < f.dim) w = w * sin(x[axis]) * sin(x[axis]);
        }
      }
    };
    auto metric = [diag](const std::array<Jet<N>, N>& x, Jet<N>* out) {
      std::array<Jet<N>, N> d;
      std::array<double, N> lam;
      diag(x, d, lam);
      for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) out[sym_index(N, i, j)] = i == j ? d[i] : Jet<N>::constant(0.0, x[0].order());
    };
    auto shape = [diag](const std::array<Jet<N>, N>& x, Jet<N>* out) {
      std::array<Jet<N>, N> d;
      std::array<double, N> lam;
      diag(x, d, lam);
      for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j)
          out[sym_index(N, i, j)] = i == j ? lam[i] * d[i] : Jet<N>::constant(0.0, x[0].order());
    };
    SpaceFormParams p;
    p.c = c;
    return HypersurfaceData{MetricFieldN(finish(SymTensorFieldN::analytic<N>(grid, metric), mode)),
                            finish(SymTensorFieldN::analytic<N>(grid, shape), mode), p};
  });
}

}  // namespace

ConformalMetric2D plane(const GridChart& chart, Mode mode) {
  return ConformalMetric2D(make(chart, [](const Jet2& x, const Jet2&) { return 0.0 * x; }, mode));
}

ConformalMetric2D sphere_cap(const GridChart& chart, Mode mode) {
  return ConformalMetric2D(
      make(chart, [](const Jet2& x, const Jet2& y) { return log(2.0 / (1.0 + x * x + y * y)); }, mode));
}

ConformalMetric2D enneper(const GridChart& chart, Mode mode) {
  return ConformalMetric2D(make(chart, [](const Jet2& x, const Jet2& y) { return log(1.0 + x * x + y * y); }, mode));
}

ConformalMetric2D catenoid(double t_min, double t_max, int n_t, int n_theta, double a, Mode mode,
                           std::set<Edge> edges) {
  if (!(a > 0)) throw PreconditionError("catenoid scale must be positive");
  const auto chart = GridChart::spanning(n_t, n_theta, t_min, t_max, 0.0, 2 * pi, false, true, std::move(edges));
  return ConformalMetric2D(make(chart, [a](const Jet2& t, const Jet2&) { return log(a * cosh(t)); }, mode));
}

double critical_catenoid_T() {
  double lo = 1.0, hi = 1.5;
  auto f = [](double t) { return t * std::tanh(t) - 1.0; };
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

CriticalCatenoid critical_catenoid(int n_t, int n_theta, Mode mode) {
  const double T = critical_catenoid_T();
  const double a = 1.0 / std::sqrt(std::cosh(T) * std::cosh(T) + T * T);
  CriticalCatenoid out{T, a, catenoid(-T, T, n_t, n_theta, a, mode, {Edge::east, Edge::west}), {}};
  out.params.c = 0.0;
  out.params.H = 0.0;
  out.params.boundary["east"] = BoundaryRecord{1.0, 1, pi / 2};
  out.params.boundary["west"] = BoundaryRecord{1.0, 1, pi / 2};
  return out;
}

ConformalMetric2D log_polar_disc(int n_s, int n_theta, double s_min, Mode mode) {
  const auto chart = GridChart::spanning(n_s, n_theta, s_min, 0.0, 0.0, 2 * pi, false, true, {Edge::east});
  return ConformalMetric2D(make(chart, [](const Jet2& s, const Jet2&) { return s; }, mode));
}

HypersurfaceData clifford_torus(int k, int n, const std::vector<int>& counts, Mode mode) {
  if (k < 1 || k >= n) throw PreconditionError("clifford_torus needs 1 <= k < n");
  if (n > 4) throw SizingError("clifford_torus supports n <= 4");
  const double r1 = std::sqrt(double(k) / n), r2 = std::sqrt(double(n - k) / n);
  const double l1 = std::sqrt(double(n - k) / k), l2 = -std::sqrt(double(k) / (n - k));
  return product_of_spheres({{k, r1, l1}, {n - k, r2, l2}}, counts, 1.0, mode);
}

HypersurfaceData round_sphere(int n, const std::vector<int>& counts, Mode mode) {
  if (n < 2 || n > 4) throw SizingError("round_sphere supports 2 <= n <= 4");
  return product_of_spheres({{n, 1.0, 0.0}}, counts, 1.0, mode);
}

HypersurfaceData flat_disc_in_ball(int n, const std::vector<int>& counts, double r_min, Mode mode) {
  if (n < 2 || n > 4) throw SizingError("flat_disc_in_ball supports 2 <= n <= 4");
  if (static_cast<int>(counts.size()) != n) throw PreconditionError("need one grid count per axis");
  if (!(r_min > 0 && r_min < 1)) throw PreconditionError("flat_disc_in_ball needs 0 < r_min < 1");
  std::vector<Axis> axes{{counts[0], (1.0 - r_min) / (counts[0] - 1), r_min, false}};
  std::size_t next = 1;
  factor_axes(n - 1, counts, next, axes);
  const Face rim{0, Side::max};
  const GridN grid(axes, {rim});
  SpaceFormParams p;
  p.c = 0.0;
  p.boundary[to_string(rim)] = BoundaryRecord{1.0, 1, pi / 2};
  return with_dim(n, [&]<int N>() {
    auto metric = [](const std::array<Jet<N>, N>& x, Jet<N>* out) {
      const int o = x[0].order();
      for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) out[sym_index(N, i, j)] = Jet<N>::constant(0.0, o);
      out[sym_index(N, 0, 0)] = Jet<N>::constant(1.0, o);
      Jet<N> w = x[0] * x[0];
      for (int a = 1; a < N; ++a) {
        out[sym_index(N, a, a)] = w;
        if (a + 1 < N) w = w * sin(x[a]) * sin(x[a]);
      }
    };
    std::vector<double> zero(N * N, 0.0);
    return HypersurfaceData{MetricFieldN(finish(SymTensorFieldN::analytic<N>(grid, metric), mode)),
                            finish(SymTensorFieldN::constant(grid, zero, Mode::analytic), mode), p};
  });
}

}  // namespace ricciforge
