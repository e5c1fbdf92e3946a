#pragma once

#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>

namespace ricciforge {

/// Umbilical wall Q(b) met along one boundary edge or face.
struct BoundaryRecord {
  double b = 0.0;
  /// +1 when the outward conormal equals the wall normal, -1 when opposite.
  int sign = 1;
  /// Capillary contact angle; pi/2 is the free boundary case.
  double alpha = std::numbers::pi / 2;
  /// b - c carried over from a cousin; ignored once it drifts from b - c by
  /// more than a few ulps.
  std::optional<double> excess;
};

/// Ambient curvature c, mean curvature H and the walls met by the boundary,
/// keyed by edge label ("east") or face label ("axis0_max").
struct SpaceFormParams {
  double c = 0.0;
  double H = 0.0;
  std::map<std::string, BoundaryRecord> boundary;
  /// c + H^2 carried over from a cousin; ignored once it drifts from c + H^2
  /// by more than a few ulps.
  std::optional<double> sum;
  /// The parameter set this one was mapped from by cousin_params; mapping
  /// back to its c returns it unchanged while the preserved sums still agree.
  std::shared_ptr<const SpaceFormParams> origin;

  /// c + H^2. Every residual reads it from here, so parameter sets with equal
  /// sums give identical results.
  double curvature_sum() const;

  /// Throws PreconditionError unless every wall has b >= c, sign +-1 and an
  /// admissible angle.
  void validate() const;
  /// Throws PreconditionError when the label has no record.
  const BoundaryRecord& record(const std::string& label) const;
  /// b - c for the wall on `label`.
  double wall_excess(const std::string& label) const;
  /// sqrt(b - c) for the wall on `label`.
  double wall_curvature(const std::string& label) const;
};

}  // namespace ricciforge
