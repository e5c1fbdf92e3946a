#pragma once

#include <optional>
#include <set>
#include <vector>

#include "ricciforge/chart.hpp"
#include "ricciforge/curvature.hpp"
#include "ricciforge/fieldn.hpp"
#include "ricciforge/params.hpp"

namespace ricciforge {

/// u = 0.
ConformalMetric2D plane(const GridChart& chart, Mode mode = Mode::analytic);
/// Unit sphere through stereographic projection, u = log(2 / (1 + x^2 + y^2)).
ConformalMetric2D sphere_cap(const GridChart& chart, Mode mode = Mode::analytic);
/// Enneper's surface, u = log(1 + x^2 + y^2), K = -4 / (1 + x^2 + y^2)^4.
ConformalMetric2D enneper(const GridChart& chart, Mode mode = Mode::analytic);

/// Catenoid of waist radius a: x = t in [t_min, t_max], y = theta periodic,
/// u = log(a cosh t), K = -1 / (a^2 cosh^4 t).
ConformalMetric2D catenoid(double t_min, double t_max, int n_t, int n_theta, double a, Mode mode = Mode::analytic,
                           std::set<Edge> edges = {});

/// Root of T tanh T = 1 on [1, 1.5] by bisection to 1e-12.
double critical_catenoid_T();

struct CriticalCatenoid {
  double T = 0.0;
  double a = 0.0;  // 1 / sqrt(cosh^2 T + T^2): boundary on the unit sphere
  ConformalMetric2D metric;
  SpaceFormParams params;  // c = 0, H = 0, walls b = 1, sign +1 on east and west
};

/// Catenoid piece t in [-T, T] meeting the unit sphere orthogonally; both
/// t-edges are physical.
CriticalCatenoid critical_catenoid(int n_t, int n_theta, Mode mode = Mode::analytic);

/// Flat unit disc in log-polar coordinates: x = s in [s_min, 0], y = theta
/// periodic, u = s, physical edge east (the unit circle, geodesic curvature 1).
ConformalMetric2D log_polar_disc(int n_s, int n_theta, double s_min = -1.0, Mode mode = Mode::analytic);

/// Hypersurface data on an n-D chart.
struct HypersurfaceData {
  MetricFieldN g;
  SymTensorFieldN A;
  SpaceFormParams params;
};

/// Polar angles stay within [margin, pi - margin] to avoid coordinate poles.
inline constexpr double kPolarMargin = 1.0;

/// S^k(sqrt(k/n)) x S^{n-k}(sqrt((n-k)/n)) in the unit S^{n+1} (c = 1) with
/// hyperspherical angles on each factor. A = lambda g on each factor with
/// lambda = sqrt((n-k)/k) and -sqrt(k/(n-k)). counts has one entry per axis.
HypersurfaceData clifford_torus(int k, int n, const std::vector<int>& counts, Mode mode = Mode::analytic);

/// Totally geodesic unit S^n in S^{n+1}: A = 0, c = 1.
HypersurfaceData round_sphere(int n, const std::vector<int>& counts, Mode mode = Mode::analytic);

/// Flat n-disc through the centre of the unit ball: polar chart r in [r_min, 1]
/// times sphere angles, A = 0, c = 0; the face r = 1 ("axis0_max") is physical
/// with wall b = 1, sign +1.
HypersurfaceData flat_disc_in_ball(int n, const std::vector<int>& counts, double r_min = 0.5,
                                   Mode mode = Mode::analytic);

}  // namespace ricciforge
