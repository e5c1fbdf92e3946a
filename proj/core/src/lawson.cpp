#include "ricciforge/lawson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace ricciforge {

namespace {

double ulps(double scale) { return 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(scale)); }

std::shared_ptr<const SpaceFormParams> detached(const SpaceFormParams& p) {
  auto copy = std::make_shared<SpaceFormParams>(p);
  copy->origin.reset();
  return copy;
}

// True when `o` is still a valid cousin of p: same c + H^2, same walls with
// the same b - c, sign and angle.
bool still_cousin(const SpaceFormParams& o, const SpaceFormParams& p) {
  if (o.curvature_sum() != p.curvature_sum() || o.boundary.size() != p.boundary.size()) return false;
  for (const auto& [label, r] : p.boundary) {
    auto it = o.boundary.find(label);
    if (it == o.boundary.end() || it->second.sign != r.sign || it->second.alpha != r.alpha ||
        o.wall_excess(label) != p.wall_excess(label))
      return false;
  }
  return true;
}

}  // namespace

SpaceFormParams cousin_params(const SpaceFormParams& p, double c_tilde) {
  p.validate();
  if (!std::isfinite(c_tilde)) throw PreconditionError("cousin_params: c_tilde must be finite");
  const double s = p.curvature_sum();
  if (s < c_tilde)
    throw PreconditionError("no cousin at this curvature: c + H^2 = " + std::to_string(s) + " < c_tilde = " +
                            std::to_string(c_tilde));
  if (p.origin && p.origin->c == c_tilde && still_cousin(*p.origin, p)) {
    SpaceFormParams back = *p.origin;
    back.H = std::abs(back.H);
    back.origin = detached(p);
    return back;
  }
  SpaceFormParams q;
  q.origin = detached(p);
  q.c = c_tilde;
  q.H = std::sqrt(s - c_tilde);
  q.sum = s;
  for (const auto& [label, r] : p.boundary) {
    BoundaryRecord t = r;
    const double d = p.wall_excess(label);
    t.b = d + c_tilde;
    t.excess = d;
    q.boundary[label] = t;
  }
  return q;
}

InvolutionResult cousin_involution_check(const SpaceFormParams& p, double c_tilde) {
  InvolutionResult out;
  out.back = cousin_params(cousin_params(p, c_tilde), p.c);
  const double scale = std::max({std::abs(p.c), std::abs(c_tilde), p.H * p.H});
  out.tol = ulps(scale);
  out.h_error = std::abs(out.back.H * out.back.H - p.H * p.H);
  for (const auto& [label, r] : p.boundary) {
    out.tol = std::max(out.tol, ulps(r.b));
    out.b_error = std::max(out.b_error, std::abs(out.back.record(label).b - r.b));
  }
  out.passed = out.back.c == p.c && out.back.H >= 0 && out.h_error <= out.tol && out.b_error <= out.tol;
  return out;
}

bool InvarianceResult::passed() const {
  if (!flatness_identical) return false;
  for (const auto& [label, same] : flux_identical)
    if (!same) return false;
  return true;
}

InvarianceResult residual_invariance_check(const ConformalMetric2D& m, const SpaceFormParams& p,
                                           const SpaceFormParams& q, const CheckOptions& opt) {
  if (p.curvature_sum() != q.curvature_sum())
    throw PreconditionError("residual_invariance_check: c + H^2 differs (" + std::to_string(p.curvature_sum()) +
                            " vs " + std::to_string(q.curvature_sum()) + ")");
  InvarianceResult out;
  const auto a = ricci_flatness_residual(m, p, opt);
  const auto b = ricci_flatness_residual(m, q, opt);
  out.flatness_identical = a.residual == b.residual && a.mask == b.mask;

  const ScalarField K = gaussian_curvature(m);
  for (Edge e : m.chart().boundary_edges()) {
    const std::string label = to_string(e);
    if (!p.boundary.count(label) || !q.boundary.count(label)) continue;
    if (p.wall_excess(label) != q.wall_excess(label))
      throw PreconditionError("residual_invariance_check: b - c differs on " + label);
    const auto fa = boundary_flux_residual(m, K, p, e, opt);
    const auto fb = boundary_flux_residual(m, K, q, e, opt);
    out.flux_identical.emplace_back(label, fa.residual == fb.residual);
  }
  return out;
}

}  // namespace ricciforge
