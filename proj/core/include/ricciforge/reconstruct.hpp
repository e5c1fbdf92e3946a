#pragma once

#include <complex>
#include <optional>

#include "ricciforge/ricci2d.hpp"

namespace ricciforge {

/// Phase normalisation of the holomorphic square root: v = 0 at the base node
/// (free), or Im phi = 0 along a physical edge.
struct Phase {
  enum Kind { free, real_on_edge } kind = free;
  Edge edge = Edge::south;

  static Phase free_phase() { return {}; }
  static Phase real_on(Edge e) { return {real_on_edge, e}; }
};

struct SqrtDiagnostics {
  std::pair<int, int> base;
  /// max |x-then-y - y-then-x| of the conjugate integral.
  double path_gap = 0.0;
  /// Mismatch of e^{i v} around each periodic direction (0 when single-valued).
  double period_gap = 0.0;
  /// Constant subtracted from v.
  double phase_shift = 0.0;
  double tol = 0.0;
};

/// Delta_flat log F on nodes with F > eps.
ResidualReport log_harmonic_check(const ScalarField& F, const CheckOptions& opt = {});

/// phi with |phi|^2 = F and phi holomorphic: w = log(F) / 2, v the harmonic
/// conjugate of w integrated from the chart centre, phi = e^{w + iv}. Jets of
/// v come from those of w through v_x = -w_y, v_y = w_x.
/// Throws PreconditionError when F is not positive, when log F fails
/// the harmonic check, when the conjugate is path dependent or multivalued
/// beyond `tol`, or (real_on_edge) when d(log F)/dnu does not vanish.
ComplexField holomorphic_sqrt(const ScalarField& F, Phase phase, const CheckOptions& opt = {},
                              SqrtDiagnostics* diag = nullptr);

/// A_xx = Re phi + H e^{2u}, A_yy = -Re phi + H e^{2u}, A_xy = -Im phi.
SymTensorField2 build_A(const ComplexField& phi, const ConformalMetric2D& m, const SpaceFormParams& p);

/// K - c - det(A) e^{-4u}.
ResidualReport gauss_residual_2d(const ConformalMetric2D& m, const SymTensorField2& A, const SpaceFormParams& p,
                                 const CheckOptions& opt = {});
/// max over k of |(nabla_x A)(y, k) - (nabla_y A)(x, k)|.
ResidualReport codazzi_residual_2d(const ConformalMetric2D& m, const SymTensorField2& A, const CheckOptions& opt = {});
/// Delta_g|A_0|^2 / 2 - |nabla A_0|^2 - 2K|A_0|^2, A_0 the traceless part. Throws
/// PreconditionError when tr_g A / 2 varies by more than `tol`.
ResidualReport simons_residual(const ConformalMetric2D& m, const SymTensorField2& A, const CheckOptions& opt = {});
/// |A_xy| along a physical edge.
ResidualReport boundary_A_check(const SymTensorField2& A, Edge edge, const CheckOptions& opt = {});

struct ReconstructionResult {
  ComplexField phi;
  SymTensorField2 A;
  SqrtDiagnostics diagnostics;
  double cr_sup = 0.0;
};

struct RoundTrip {
  std::optional<ReconstructionResult> result;
  ReportBundle reports;
};

/// F = (c + H^2 - K) e^{4u}, then holomorphic_sqrt, build_A and every residual
/// (flatness, modulus, Cauchy-Riemann, Gauss, Codazzi, Simons, A_xy on physical
/// edges). In sampled mode the Cauchy-Riemann residual is taken from stencils
/// on the samples of phi, with tolerance proportional to h. A degenerate or failing flatness check stops before reconstruction.
RoundTrip roundtrip(const ConformalMetric2D& m, const SpaceFormParams& p, Phase phase, const CheckOptions& opt = {});

}  // namespace ricciforge
