#include "ricciforge/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ricciforge {

namespace {

constexpr double kHarmonicFactor = 200.0;
constexpr double kGaussFactor = 50.0;
constexpr double kCodazziFactor = 50.0;
constexpr double kSimonsFactor = 500.0;
constexpr double kEdgeFactor = 20.0;
constexpr double kConjugateFactor = 10.0;
constexpr double kCauchyRiemannFactor = 20.0;

double pick_tol(const CheckOptions& opt, Mode mode, double analytic, double factor, double h) {
  if (opt.tol) return *opt.tol;
  return mode == Mode::analytic ? analytic : factor * h * h;
}

Mode joint_mode(std::initializer_list<const ScalarField*> fs) {
  for (const ScalarField* f : fs)
    if (!f->is_analytic()) return Mode::sampled;
  return Mode::analytic;
}

Jet2 laplacian(const Jet2& f) { return f.d(0).d(0) + f.d(1).d(1); }

// Distance of the loop integral of dG = 2 dw/dz from the lattice 2 pi i Z:
// e^{w + iv} is single-valued exactly when the loop lands on it.
double loop_mismatch(std::complex<double> loop) {
  const double two_pi = 2 * std::numbers::pi;
  const double k = std::round(loop.imag() / two_pi);
  return std::abs(loop.real()) + std::abs(loop.imag() - k * two_pi);
}

// Values of the conformal connection at a node, Gamma[l][i][j].
using Conn = std::array<std::array<std::array<double, 2>, 2>, 2>;

Conn conformal_connection(const Jet2& u) {
  const double ux = u.deriv({1, 0}), uy = u.deriv({0, 1});
  Conn G{};
  G[0][0][0] = ux;
  G[1][0][0] = -uy;
  G[0][0][1] = G[0][1][0] = uy;
  G[1][0][1] = G[1][1][0] = ux;
  G[0][1][1] = -ux;
  G[1][1][1] = uy;
  return G;
}

// (nabla_i T)_jk for a symmetric tensor with component jets T[j][k].
using Sym2 = std::array<std::array<const Jet2*, 2>, 2>;

double covariant(const Sym2& T, const Conn& G, int i, int j, int k) {
  const Jet2::Index di = i == 0 ? Jet2::Index{1, 0} : Jet2::Index{0, 1};
  double s = T[j][k]->deriv(di);
  for (int l = 0; l < 2; ++l) s -= G[l][i][j] * T[l][k]->value() + G[l][i][k] * T[j][l]->value();
  return s;
}

}  // namespace

ResidualReport log_harmonic_check(const ScalarField& F, const CheckOptions& opt) {
  require_order(F, 2, "log_harmonic_check");
  const GridChart& chart = F.chart();
  double scale = 0.0;
  for (double v : F.values()) scale = std::max(scale, std::abs(v));
  const double eps = opt.eps.value_or(mask_threshold(scale));
  const std::size_t n = chart.size();
  std::vector<double> r(n, 0.0);
  std::vector<std::uint8_t> mask(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = F.at(i);
    if (!(f > eps)) {
      mask[i] = 1;
      continue;
    }
    if (!(f > 0)) throw PreconditionError("log_harmonic_check: F <= 0 on an unmasked node");
    r[i] = laplacian(log(F.jet(i))).value();
  }
  const double tol = pick_tol(opt, F.mode(), 1e-9, kHarmonicFactor, chart_spacing(chart));
  return field_report("log_harmonic", chart, std::move(r), std::move(mask), tol, F.mode(),
                      "degenerate: F vanishes everywhere");
}

ComplexField holomorphic_sqrt(const ScalarField& F, Phase phase, const CheckOptions& opt, SqrtDiagnostics* diag) {
  const GridChart& chart = F.chart();
  require_order(F, 1, "holomorphic_sqrt");
  for (std::size_t i = 0; i < chart.size(); ++i)
    if (!(F.at(i) > 0))
      throw PreconditionError("holomorphic_sqrt: F is not positive at node " + node_label(chart.grid(), i));
  if (F.jet_order() >= 2) {
    const auto lh = log_harmonic_check(F, opt);
    if (lh.status == Status::failed)
      throw PreconditionError("holomorphic_sqrt: log F is not harmonic (sup " + std::to_string(lh.sup) + ")");
  }
  const std::size_t n = chart.size();
  std::vector<Jet2> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 * log(F.jet(i));

  // v is Im of the integral of (w_x - i w_y) dz.
  std::vector<Jet2> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = Jet2::constant(w[i].deriv({1, 0}), 0);
    im[i] = Jet2::constant(-w[i].deriv({0, 1}), 0);
  }
  const ComplexField integrand(ScalarField::from_jets(chart, std::move(re), Mode::sampled),
                               ScalarField::from_jets(chart, std::move(im), Mode::sampled));
  SqrtDiagnostics d;
  d.base = chart.center_node();
  const PathIntegrals paths = integrate_from(integrand, d.base);
  d.path_gap = paths.path_gap();
  if (paths.period_x) d.period_gap = std::max(d.period_gap, loop_mismatch(*paths.period_x));
  if (paths.period_y) d.period_gap = std::max(d.period_gap, loop_mismatch(*paths.period_y));
  const double h = chart_spacing(chart);
  d.tol = opt.tol.value_or(1e-10 + kConjugateFactor * h * h);
  if (d.path_gap > d.tol)
    throw PreconditionError("holomorphic_sqrt: conjugate integral is path dependent (gap " +
                            std::to_string(d.path_gap) + ")");
  if (d.period_gap > d.tol)
    throw PreconditionError("holomorphic_sqrt: square root is multivalued around a periodic direction (mismatch " +
                            std::to_string(d.period_gap) + "); cut the chart");

  // With a phase edge, take the staircase that ends by running along it, so
  // that v varies there only through d(log F)/dnu.
  const bool along_x = phase.kind == Phase::real_on_edge && (phase.edge == Edge::south || phase.edge == Edge::north);
  const auto& chosen = along_x ? paths.y_then_x : paths.x_then_y;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = chosen[i].imag();
  if (phase.kind == Phase::real_on_edge) {
    if (!chart.is_physical(phase.edge))
      throw PreconditionError("holomorphic_sqrt: edge " + to_string(phase.edge) + " is not physical");
    const ScalarField logF = pointwise([](const Jet2& f) { return log(f); }, F);
    const BoundaryTrace dn = normal_derivative(logF, phase.edge);
    double worst = 0.0;
    for (double x : dn.values) worst = std::max(worst, std::abs(x));
    const double ntol = pick_tol(opt, F.mode(), 1e-8, kEdgeFactor, h);
    if (worst > ntol)
      throw PreconditionError("holomorphic_sqrt: Neumann condition for log F fails on " + to_string(phase.edge) +
                              " (sup " + std::to_string(worst) + ")");
    double mean = 0.0;
    for (std::size_t node : dn.nodes) mean += v[node];
    d.phase_shift = mean / dn.nodes.size();
  } else {
    d.phase_shift = v[chart.index(d.base.first, d.base.second)];
  }

  // Jets of v from those of w through v_x = -w_y, v_y = w_x; w keeps its own
  // jet, so a defect in Delta w shows up downstream instead of cancelling.
  const auto& t = Jet2::table();
  std::vector<Jet2> phi_re(n), phi_im(n);
  for (std::size_t node = 0; node < n; ++node) {
    const Jet2& P = w[node];
    const int order = P.order();
    Jet2 Q = Jet2::constant(v[node] - d.phase_shift, order);
    for (int idx = 1; idx < t.degree_end[order]; ++idx) {
      const int i = t.alpha[idx][0], j = t.alpha[idx][1];
      const double q = j >= 1 ? P.deriv({i + 1, j - 1}) : -P.deriv({i - 1, 1});
      Q.coeff(idx) = q / t.factorial[idx];
    }
    const Jet2 e = exp(P);
    phi_re[node] = e * cos(Q);
    phi_im[node] = e * sin(Q);
  }
  if (diag) *diag = d;
  return ComplexField(ScalarField::from_jets(chart, std::move(phi_re), F.mode()),
                      ScalarField::from_jets(chart, std::move(phi_im), F.mode()));
}

SymTensorField2 build_A(const ComplexField& phi, const ConformalMetric2D& m, const SpaceFormParams& p) {
  require_same_chart(phi.chart(), m.chart(), "build_A");
  const double H = p.H;
  return SymTensorField2(
      pointwise([H](const Jet2& re, const Jet2& u) { return re + H * exp(2.0 * u); }, phi.re, m.u()),
      pointwise([](const Jet2& im) { return -im; }, phi.im),
      pointwise([H](const Jet2& re, const Jet2& u) { return -re + H * exp(2.0 * u); }, phi.re, m.u()));
}

ResidualReport gauss_residual_2d(const ConformalMetric2D& m, const SymTensorField2& A, const SpaceFormParams& p,
                                 const CheckOptions& opt) {
  require_same_chart(m.chart(), A.chart(), "gauss_residual_2d");
  const ScalarField K = gaussian_curvature(m);
  const std::size_t n = m.chart().size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double det = A.axx.at(i) * A.ayy.at(i) - A.axy.at(i) * A.axy.at(i);
    r[i] = K.at(i) - p.c - det * std::exp(-4.0 * m.u().at(i));
  }
  const Mode mode = joint_mode({&m.u(), &A.axx, &A.axy, &A.ayy});
  const double tol = pick_tol(opt, mode, 1e-9, kGaussFactor, chart_spacing(m.chart()));
  return field_report("gauss", m.chart(), std::move(r), {}, tol, mode);
}

ResidualReport codazzi_residual_2d(const ConformalMetric2D& m, const SymTensorField2& A, const CheckOptions& opt) {
  require_same_chart(m.chart(), A.chart(), "codazzi_residual_2d");
  require_order(A.axx, 1, "codazzi_residual_2d");
  require_order(A.axy, 1, "codazzi_residual_2d");
  require_order(A.ayy, 1, "codazzi_residual_2d");
  const std::size_t n = m.chart().size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Conn G = conformal_connection(m.u().jet(i));
    const Sym2 T{{{&A.axx.jet(i), &A.axy.jet(i)}, {&A.axy.jet(i), &A.ayy.jet(i)}}};
    double worst = 0.0;
    for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(covariant(T, G, 0, 1, k) - covariant(T, G, 1, 0, k)));
    r[i] = worst;
  }
  const Mode mode = joint_mode({&m.u(), &A.axx, &A.axy, &A.ayy});
  const double tol = pick_tol(opt, mode, 1e-9, kCodazziFactor, chart_spacing(m.chart()));
  return field_report("codazzi", m.chart(), std::move(r), {}, tol, mode);
}

ResidualReport simons_residual(const ConformalMetric2D& m, const SymTensorField2& A, const CheckOptions& opt) {
  require_same_chart(m.chart(), A.chart(), "simons_residual");
  for (const ScalarField* f : {&A.axx, &A.axy, &A.ayy}) require_order(*f, 2, "simons_residual");
  const GridChart& chart = m.chart();
  const std::size_t n = chart.size();
  const Mode mode = joint_mode({&m.u(), &A.axx, &A.axy, &A.ayy});
  const double tol = pick_tol(opt, mode, 1e-8, kSimonsFactor, chart_spacing(chart));

  double hmin = INFINITY, hmax = -INFINITY, hsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = 0.5 * std::exp(-2.0 * m.u().at(i)) * (A.axx.at(i) + A.ayy.at(i));
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
    hsum += h;
  }
  if (hmax - hmin > tol)
    throw PreconditionError("simons_residual: mean curvature varies by " + std::to_string(hmax - hmin));
  const double H = hsum / n;

  const ScalarField K = gaussian_curvature(m);
  std::vector<double> r(n);
  parallel_for(n, [&](std::size_t i) {
    const Jet2& u = m.u().jet(i);
    const Jet2 g = H * exp(2.0 * u);
    const Jet2 oxx = A.axx.jet(i) - g, oxy = A.axy.jet(i), oyy = A.ayy.jet(i) - g;
    const Jet2 norm = exp(-4.0 * u) * (oxx * oxx + 2.0 * oxy * oxy + oyy * oyy);
    const Conn G = conformal_connection(u);
    const Sym2 T{{{&oxx, &oxy}, {&oxy, &oyy}}};
    double grad = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          const double x = covariant(T, G, a, b, c);
          grad += x * x;
        }
    grad *= std::exp(-6.0 * u.value());
    const double lap = std::exp(-2.0 * u.value()) * laplacian(norm).value();
    r[i] = 0.5 * lap - grad - 2.0 * K.at(i) * norm.value();
  });
  return field_report("simons", chart, std::move(r), {}, tol, mode);
}

ResidualReport boundary_A_check(const SymTensorField2& A, Edge edge, const CheckOptions& opt) {
  const GridChart& chart = A.chart();
  if (!chart.is_physical(edge)) throw PreconditionError("boundary_A_check: edge " + to_string(edge) + " is not physical");
  const BoundaryTrace t = edge_trace(A.axy, edge);
  std::vector<double> r(t.values.size());
  for (std::size_t q = 0; q < r.size(); ++q) r[q] = std::abs(t.values[q]);
  const Mode mode = A.axy.mode();
  const double tol = pick_tol(opt, mode, 1e-10, kEdgeFactor, chart_spacing(chart));
  auto rep = edge_report("boundary_A_" + to_string(edge), chart, edge, std::move(r), tol, mode);
  return rep;
}

RoundTrip roundtrip(const ConformalMetric2D& m, const SpaceFormParams& p, Phase phase, const CheckOptions& opt) {
  RoundTrip out;
  auto flat = ricci_flatness_residual(m, p, opt);
  const bool stop = flat.status != Status::passed;
  if (flat.excluded > 0 && !flat.degenerate() && !stop)
    throw PreconditionError("roundtrip: c + H^2 - K vanishes on " + std::to_string(flat.excluded) +
                            " nodes; reconstruction needs it positive");
  out.reports.reports.push_back(std::move(flat));
  if (stop) return out;

  const GridChart& chart = m.chart();
  const double s = p.curvature_sum();
  const ScalarField K = gaussian_curvature(m);
  const ScalarField F = pointwise([s](const Jet2& k, const Jet2& u) { return (s - k) * exp(4.0 * u); }, K, m.u());
  SqrtDiagnostics diag;
  const ComplexField phi = holomorphic_sqrt(F, phase, opt, &diag);
  const SymTensorField2 A = build_A(phi, m, p);
  const Mode mode = phi.re.mode();
  const double h = chart_spacing(chart);

  std::vector<double> modulus(chart.size());
  double fmax = 0.0;
  for (std::size_t i = 0; i < chart.size(); ++i) {
    const auto z = phi.at(i);
    modulus[i] = std::norm(z) - F.at(i);
    fmax = std::max(fmax, std::abs(F.at(i)));
  }
  const double mtol = opt.tol.value_or(mode == Mode::analytic ? 1e-9 * std::max(1.0, fmax) : kGaussFactor * h * h * fmax);
  out.reports.reports.push_back(field_report("modulus", chart, std::move(modulus), {}, mtol, mode));

  // Sampled phi is differentiated afresh from its samples so the witness sees
  // the quadrature of v. The O(h^2) error of K jumps where stencils turn
  // one-sided, which costs one order here.
  const ScalarField cr = cauchy_riemann_residual(mode == Mode::analytic ? phi : phi.resampled());
  std::vector<double> crv(cr.values().begin(), cr.values().end());
  const double ctol = opt.tol.value_or(mode == Mode::analytic ? 1e-10 : kCauchyRiemannFactor * h);
  auto crr = field_report("cauchy_riemann", chart, std::move(crv), {}, ctol, mode);
  const double cr_sup = crr.sup;
  out.reports.reports.push_back(std::move(crr));

  auto gap = make_report("path_independence", {diag.path_gap, diag.period_gap}, {}, 1.0, diag.tol, to_string(mode),
                         grid_info(chart));
  gap.note = "staircase gap and periodic mismatch";
  out.reports.reports.push_back(std::move(gap));

  out.reports.reports.push_back(gauss_residual_2d(m, A, p, opt));
  out.reports.reports.push_back(codazzi_residual_2d(m, A, opt));
  out.reports.reports.push_back(simons_residual(m, A, opt));
  for (Edge e : chart.boundary_edges()) out.reports.reports.push_back(boundary_A_check(A, e, opt));
  out.result = ReconstructionResult{phi, A, diag, cr_sup};
  return out;
}

}  // namespace ricciforge
