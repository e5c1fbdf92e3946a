#pragma once

#include <optional>
#include <string>

#include "ricciforge/chart.hpp"
#include "ricciforge/curvature.hpp"
#include "ricciforge/params.hpp"
#include "ricciforge/report.hpp"

namespace ricciforge {

/// Overrides for a check. Unset values fall back to the per-check defaults:
/// a fixed bound in analytic mode and a multiple of h^2 in sampled mode.
struct CheckOptions {
  std::optional<double> eps;
  std::optional<double> tol;
};

/// max(1e-12, 1e3 * machine epsilon * scale).
double mask_threshold(double scale);

GridInfo grid_info(const GridChart& chart);
/// Largest spacing of the chart.
double chart_spacing(const GridChart& chart);

/// Report over every chart node, with area weight hx * hy.
ResidualReport field_report(std::string check, const GridChart& chart, std::vector<double> residual,
                            std::vector<std::uint8_t> mask, double tol, Mode mode,
                            std::string degenerate_note = "every sample masked");
/// Report over the nodes of one edge, with length weight along the edge.
ResidualReport edge_report(std::string check, const GridChart& chart, Edge edge, std::vector<double> residual,
                           double tol, Mode mode);

/// |A_0|^2 = 2 (c + H^2 - K); negative values are returned as they are.
ScalarField sff_norm_sq(const ScalarField& K, const SpaceFormParams& p);

/// Flatness witness Delta_flat log((c + H^2 - K) e^{4u}). Nodes where
/// c + H^2 - K <= eps are masked; when all are, the report is degenerate.
ResidualReport ricci_flatness_residual(const ConformalMetric2D& m, const SpaceFormParams& p,
                                       const CheckOptions& opt = {});

enum class Operators { metric, flat };

/// R(K) = -K Delta_g K + |grad K|_g^2 + 4 K^3, unmasked. `Operators::flat`
/// swaps in the flat Laplacian and gradient, for debugging only.
ResidualReport moroianu_residual(const ConformalMetric2D& m, const CheckOptions& opt = {},
                                 Operators ops = Operators::metric);

/// R(K) - K^2 (-Delta_g log(-K) + 4K) on nodes with K <= -eps (default 1e-6).
/// Throws PreconditionError when no such node exists.
ResidualReport moroianu_flatness_equivalence(const ConformalMetric2D& m, const CheckOptions& opt = {});

/// -d|A_0|^2/dnu - sign * 4 sqrt(b - c) |A_0|^2 along a physical edge, nu the
/// unit outward normal of g.
ResidualReport boundary_flux_residual(const ConformalMetric2D& m, const ScalarField& K, const SpaceFormParams& p,
                                      Edge edge, const CheckOptions& opt = {});

/// Interior R(K) = 0, and on each physical edge dK/dnu = -4K and geodesic
/// curvature 1. Throws PreconditionError on a chart without physical edges.
ReportBundle ricci_with_boundary_check(const ConformalMetric2D& m, const CheckOptions& opt = {});

enum class ZeroSet { everywhere_zero, no_zeros, isolated, non_isolated };
std::string to_string(ZeroSet z);

/// h^2 * sup|f| / L^2 with h the largest spacing and L the largest chart
/// extent, floored at mask_threshold(sup|f|) so round-off reads as zero.
double default_zero_eps(const ScalarField& f);

/// Classifies {|f| <= eps} by its 4-connected components (periodic
/// directions wrap). Resolution is the grid's: zeros between nodes are missed.
ZeroSet zero_set_classify(const ScalarField& f, std::optional<double> eps = {});

/// g(T, T) along an edge, T the coordinate tangent.
BoundaryTrace edge_metric(const ConformalMetric2D& m, Edge edge);
/// B(T, T) = g(nabla_T nu, T) = k g(T, T) along a physical edge.
BoundaryTrace edge_second_fundamental_form(const ConformalMetric2D& m, Edge edge);
/// A(T, T) along an edge.
BoundaryTrace tangential_component(const SymTensorField2& A, Edge edge);

/// sqrt(b - c) g(T,T) - cos(alpha) A(T,T) - sin(alpha) B(T,T) along an edge.
ResidualReport capillary_identity_residual(const BoundaryTrace& A_tt, const BoundaryTrace& B_tt,
                                           const BoundaryTrace& g_tt, const SpaceFormParams& p,
                                           const GridChart& chart, Mode mode, const CheckOptions& opt = {});

}  // namespace ricciforge
