#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ricciforge/curvature.hpp"
#include "ricciforge/fieldn.hpp"
#include "ricciforge/params.hpp"
#include "ricciforge/report.hpp"
#include "ricciforge/ricci2d.hpp"

namespace ricciforge {

GridInfo grid_info(const GridN& grid);
/// Largest spacing over the axes of a grid.
double grid_spacing(const GridN& grid);

enum class Definiteness { positive_definite, semidefinite, indefinite };
std::string to_string(Definiteness d);

/// gbar = c (n - 1) g - Ric with its definiteness per node, judged on the
/// eigenvalues of gbar relative to g against `floor`.
struct AbarMetric {
  SymTensorFieldN gbar;
  std::vector<Definiteness> classes;
  std::vector<double> min_eigenvalue;
  double floor = 0.0;
  /// 1 where gbar is not positive definite.
  std::vector<std::uint8_t> mask() const;
};

/// `opt.eps` overrides the definiteness floor, which defaults to 1e-9 in
/// analytic mode and h^2 in sampled mode, both times max(1, sup |eigenvalue|).
AbarMetric abar_metric(const MetricFieldN& g, double c, const CheckOptions& opt = {});

/// (A o A)_ij = A_ik g^kl A_lj.
SymTensorFieldN a_compose_a(const MetricFieldN& g, const SymTensorFieldN& A);

/// max |gbar_ij - (A o A)_ij| over components; the two agree for minimal
/// hypersurfaces.
ResidualReport gbar_compose_residual(const AbarMetric& gbar, const MetricFieldN& g, const SymTensorFieldN& A,
                                     const CheckOptions& opt = {});

/// Four-index samples at [node][i][j][k][l].
struct FourTensorField {
  GridN grid;
  int n = 0;
  std::vector<double> values;
  double operator()(std::size_t node, int i, int j, int k, int l) const {
    return values[node * n * n * n * n + kernels::ix(n, i, j, k, l)];
  }
};

/// (h . k)_ijkl = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il.
FourTensorField kulkarni_nomizu(const SymTensorFieldN& h, const SymTensorFieldN& k);

/// max over i, j, k of |Gbar_ij,k - A_km (d_i A_j^m + Gamma^m_il A_j^l)|, with
/// Gbar the lowered Christoffel symbols of gbar. Nodes where gbar is not
/// positive definite are masked; all masked gives a degenerate report.
ResidualReport condition_i_residual(const MetricFieldN& g, const SymTensorFieldN& A, const AbarMetric& gbar,
                                    const CheckOptions& opt = {});

/// max |Rm_gbar - gbar.gbar / 2 - (c / 2) A.A| over components, masked as above.
ResidualReport condition_ii_residual(const MetricFieldN& g, const SymTensorFieldN& A, const AbarMetric& gbar,
                                     double c, const CheckOptions& opt = {});

/// "gauss_ndim": max |Rm - (c/2) g.g - A.A / 2|; "codazzi_ndim": max over
/// i, j, k of |nabla_i A_jk - nabla_j A_ik|.
ReportBundle gauss_codazzi_residual_ndim(const MetricFieldN& g, const SymTensorFieldN& A, double c,
                                         const CheckOptions& opt = {});

/// g^ij A_ij.
ResidualReport minimality_check(const MetricFieldN& g, const SymTensorFieldN& A, const CheckOptions& opt = {});

/// Second fundamental form of a coordinate face, B_ab = g(nabla_a nu, d_b) for
/// nu the outward unit normal; stored as full n x n matrices per face node with
/// the normal row and column zero.
struct FaceTrace {
  Face face;
  std::vector<std::size_t> nodes;
  std::vector<std::vector<double>> values;
};

/// Throws PreconditionError unless the face is physical.
FaceTrace face_second_fundamental_form(const MetricFieldN& g, Face face);

/// "umbilic_<face>": max over tangent a, b of |B_ab - sign sqrt(b - c) g_ab|;
/// "normal_A_<face>": max over tangent a of |A(d_a, nu)|.
ReportBundle boundary_umbilic_check(const MetricFieldN& g, const SymTensorFieldN& A, const FaceTrace& B,
                                    const SpaceFormParams& p, const CheckOptions& opt = {});

}  // namespace ricciforge
