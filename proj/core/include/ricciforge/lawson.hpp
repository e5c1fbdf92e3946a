#pragma once

#include <string>
#include <vector>

#include "ricciforge/curvature.hpp"
#include "ricciforge/params.hpp"
#include "ricciforge/ricci2d.hpp"

namespace ricciforge {

/// Parameters of the cousin in the space form of curvature c_tilde: same
/// c + H^2 and same b - c on every wall, with H_tilde >= 0. Signs and angles
/// carry over, and the preserved sums are stored on the result so residuals
/// computed from it match those of p bit for bit. The result remembers p, so
/// mapping it back to p.c returns (p.c, |p.H|, {b}) exactly. Throws
/// PreconditionError when c + H^2 < c_tilde or a wall has b < c.
SpaceFormParams cousin_params(const SpaceFormParams& p, double c_tilde);

struct InvolutionResult {
  SpaceFormParams back;
  /// |H_back^2 - H^2| and max |b_back - b|.
  double h_error = 0.0;
  double b_error = 0.0;
  double tol = 0.0;
  bool passed = false;
};

/// cousin_params(cousin_params(p, c_tilde), c) against (c, |H|, {b}). The
/// tolerance is a few ulps of the magnitudes involved.
InvolutionResult cousin_involution_check(const SpaceFormParams& p, double c_tilde);

struct InvarianceResult {
  bool flatness_identical = false;
  /// Physical edges with a wall in both parameter sets, and whether their flux
  /// residuals agree bit for bit.
  std::vector<std::pair<std::string, bool>> flux_identical;
  bool passed() const;
};

/// Evaluates ricci_flatness_residual, and boundary_flux_residual on each
/// physical edge carrying walls in both sets, for p and q and compares the
/// residual fields bit for bit. Throws PreconditionError unless c + H^2 agree
/// exactly and b - c agree exactly on every shared wall.
InvarianceResult residual_invariance_check(const ConformalMetric2D& m, const SpaceFormParams& p,
                                           const SpaceFormParams& q, const CheckOptions& opt = {});

}  // namespace ricciforge
