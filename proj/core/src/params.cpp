#include "ricciforge/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ricciforge/errors.hpp"

namespace ricciforge {

namespace {

// `scale` bounds the magnitude of the terms that produced `computed`.
double carried(const std::optional<double>& stored, double computed, double scale) {
  if (stored && std::abs(*stored - computed) <= 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale))
    return *stored;
  return computed;
}

}  // namespace

void SpaceFormParams::validate() const {
  if (!std::isfinite(c) || !std::isfinite(H)) throw PreconditionError("c and H must be finite");
  for (const auto& [label, r] : boundary) {
    if (!(r.b >= c))
      throw PreconditionError("wall on " + label + " has b = " + std::to_string(r.b) + " < c = " + std::to_string(c));
    if (r.sign != 1 && r.sign != -1) throw PreconditionError("wall on " + label + " needs sign +1 or -1");
    const double s = std::sin(r.alpha);
    if (!(r.alpha > 0.0 && r.alpha < 2 * std::numbers::pi) || std::abs(s) < 1e-14)
      throw PreconditionError("wall on " + label + " has a contact angle outside (0, pi) u (pi, 2 pi)");
  }
}

const BoundaryRecord& SpaceFormParams::record(const std::string& label) const {
  auto it = boundary.find(label);
  if (it == boundary.end()) throw PreconditionError("no wall parameters for boundary " + label);
  return it->second;
}

double SpaceFormParams::curvature_sum() const { return carried(sum, c + H * H, std::max(std::abs(c), H * H)); }

double SpaceFormParams::wall_excess(const std::string& label) const {
  const BoundaryRecord& r = record(label);
  return carried(r.excess, r.b - c, std::max(std::abs(r.b), std::abs(c)));
}

double SpaceFormParams::wall_curvature(const std::string& label) const {
  const double d = wall_excess(label);
  if (d < 0) throw PreconditionError("wall on " + label + " has b < c");
  return std::sqrt(d);
}

}  // namespace ricciforge
