#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ricciforge/hyperdim.hpp"
#include "ricciforge/reconstruct.hpp"
#include "ricciforge/surfaces.hpp"

using namespace ricciforge;

namespace {

double max_component_gap(const SymTensorFieldN& a, const SymTensorFieldN& b) {
  double d = 0.0;
  for (std::size_t node = 0; node < a.grid().size(); ++node)
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) d = std::max(d, std::abs(a.at(node, i, j) - b.at(node, i, j)));
  return d;
}

GridN flat_grid(int n, int count) {
  std::vector<Axis> axes(n, Axis{count, 0.1, -0.5, false});
  return GridN(axes);
}

SymTensorFieldN identity(const GridN& grid, double scale = 1.0) {
  const int n = grid.dim();
  std::vector<double> m(n * n, 0.0);
  for (int i = 0; i < n; ++i) m[i * n + i] = scale;
  return SymTensorFieldN::constant(grid, m);
}

// A + eps x_0 g on analytic product data.
SymTensorFieldN perturbed(const HypersurfaceData& d, double eps) {
  const SymTensorFieldN g = d.g.tensor(), A = d.A;
  auto provider = ComponentJets<3>([g, A, eps](std::size_t node, int order, Jet<3>* out) {
    std::array<Jet<3>, 6> gj, aj;
    g.jets<3>(node, order, gj.data());
    A.jets<3>(node, order, aj.data());
    const Jet<3> x = Jet<3>::variable(0, g.grid().coords(node)[0], order);
    for (int q = 0; q < 6; ++q) out[q] = aj[q] + eps * x * gj[q];
  });
  return SymTensorFieldN::derived(g.grid(), provider, Mode::analytic, 4);
}

}  // namespace

TEST_CASE("auxiliary metric") {
  const auto s3 = round_sphere(3, {10, 10, 12});
  const auto ab = abar_metric(s3.g, 1.0);
  const auto zero = SymTensorFieldN::constant(s3.g.grid(), std::vector<double>(9, 0.0));
  CHECK(max_component_gap(ab.gbar, zero) < 1e-12);
  CHECK(ab.classes[0] == Definiteness::semidefinite);

  const auto flat = MetricFieldN(identity(flat_grid(3, 8)));
  const auto fb = abar_metric(flat, 0.0);
  CHECK(max_component_gap(fb.gbar, SymTensorFieldN::constant(flat.grid(), std::vector<double>(9, 0.0))) == 0.0);

  const auto cl = clifford_torus(1, 3, {10, 10, 10});
  const auto cb = abar_metric(cl.g, 1.0);
  for (std::size_t node = 0; node < cl.g.grid().size(); node += 17) {
    const auto ev = generalized_eigenvalues(cb.gbar.matrix(node), cl.g.tensor().matrix(node), 3);
    CHECK(ev[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev[2] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cb.classes[node] == Definiteness::positive_definite);
  }
  CHECK(max_component_gap(cb.gbar, a_compose_a(cl.g, cl.A)) < 1e-12);

  // c too negative makes gbar indefinite on the Clifford torus
  const auto neg = abar_metric(cl.g, -1.0);
  CHECK(neg.classes[5] == Definiteness::indefinite);
}

TEST_CASE("A o A") {
  const auto cl = clifford_torus(1, 3, {8, 8, 8});
  const auto zero = SymTensorFieldN::constant(cl.g.grid(), std::vector<double>(9, 0.0));
  CHECK(max_component_gap(a_compose_a(cl.g, zero), zero) == 0.0);
  CHECK(max_component_gap(a_compose_a(cl.g, cl.g.tensor()), cl.g.tensor()) < 1e-13);
  const auto aa = a_compose_a(cl.g, cl.A);
  for (std::size_t node = 0; node < cl.g.grid().size(); node += 11) {
    const auto ev = generalized_eigenvalues(aa.matrix(node), cl.g.tensor().matrix(node), 3);
    CHECK(ev[0] >= -1e-10);
    CHECK(ev[2] == doctest::Approx(2.0));
  }
}

TEST_CASE("Kulkarni-Nomizu product") {
  const auto grid = flat_grid(3, 4);
  const auto g = identity(grid);
  CHECK(kulkarni_nomizu(g, g)(0, 0, 1, 0, 1) == 2.0);
  const auto h = SymTensorFieldN::constant(grid, std::vector<double>{1, 2, 3, 2, -1, 0.5, 3, 0.5, 4});
  const auto k = SymTensorFieldN::constant(grid, std::vector<double>{0, 1, -2, 1, 3, 1, -2, 1, 2});
  const auto hk = kulkarni_nomizu(h, k), kh = kulkarni_nomizu(k, h);
  CHECK(hk.values == kh.values);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double v = hk(7, i, j, a, b);
          CHECK(v == -hk(7, j, i, a, b));
          CHECK(v == -hk(7, i, j, b, a));
          CHECK(v == hk(7, a, b, i, j));
          CHECK(v + hk(7, j, a, i, b) + hk(7, a, i, j, b) == doctest::Approx(0.0));
        }

  // half of g.g is the curvature tensor of the unit sphere
  const auto s2 = round_sphere(2, {33, 32}, Mode::sampled);
  const auto gg = kulkarni_nomizu(s2.g.tensor(), s2.g.tensor());
  const auto curv = riemann(s2.g, christoffel(s2.g));
  double gap = 0.0;
  for (std::size_t node = 0; node < s2.g.grid().size(); ++node)
    gap = std::max(gap, std::abs(curv.riemann(node, 0, 1, 0, 1) - 0.5 * gg(node, 0, 1, 0, 1)));
  CHECK(gap < 5e-3);
}

TEST_CASE("conditions on the Clifford torus") {
  const auto cl = clifford_torus(1, 3, {12, 12, 12});
  const auto ab = abar_metric(cl.g, 1.0);
  const auto ci = condition_i_residual(cl.g, cl.A, ab);
  const auto cii = condition_ii_residual(cl.g, cl.A, ab, 1.0);
  CHECK(ci.passed());
  CHECK(cii.passed());
  CHECK(ci.sup < 1e-12);
  CHECK(cii.sup < 1e-12);

  double slope[2];
  int q = 0;
  for (double eps : {1e-3, 1e-2}) {
    const auto A = perturbed(cl, eps);
    const auto r = condition_i_residual(cl.g, A, ab);
    CHECK(r.status == Status::failed);
    slope[q++] = r.sup / eps;
  }
  CHECK(slope[1] / slope[0] == doctest::Approx(1.0).epsilon(0.2));

  // flat space: gbar = 0 everywhere, nothing to evaluate
  const auto flat = MetricFieldN(identity(flat_grid(3, 6)));
  const auto zero = SymTensorFieldN::constant(flat.grid(), std::vector<double>(9, 0.0));
  const auto fb = abar_metric(flat, 0.0);
  CHECK(condition_ii_residual(flat, zero, fb, 0.0).degenerate());
  CHECK(condition_i_residual(flat, zero, fb).degenerate());
}

TEST_CASE("condition residuals converge on sampled data") {
  double prev_i = 0, prev_ii = 0;
  for (int n : {16, 32}) {
    const auto cl = clifford_torus(1, 3, {n, n, n}, Mode::sampled);
    const auto ab = abar_metric(cl.g, 1.0);
    const auto ci = condition_i_residual(cl.g, cl.A, ab);
    const auto cii = condition_ii_residual(cl.g, cl.A, ab, 1.0);
    CHECK(ci.excluded == 0);
    CHECK(ci.passed());
    CHECK(cii.passed());
    if (prev_i > 0) {
      CHECK(std::log2(prev_i / ci.sup) >= 1.5);
      CHECK(std::log2(prev_ii / cii.sup) >= 1.5);
    }
    prev_i = ci.sup;
    prev_ii = cii.sup;
  }
}

TEST_CASE("n-dimensional Gauss and Codazzi") {
  const auto s3 = round_sphere(3, {10, 10, 10});
  const auto zero = SymTensorFieldN::constant(s3.g.grid(), std::vector<double>(9, 0.0));
  CHECK(gauss_codazzi_residual_ndim(s3.g, zero, 1.0).status() == Status::passed);
  const auto cl = clifford_torus(1, 3, {10, 10, 10});
  CHECK(gauss_codazzi_residual_ndim(cl.g, cl.A, 1.0).status() == Status::passed);
  const auto cs = clifford_torus(1, 3, {24, 24, 24}, Mode::sampled);
  CHECK(gauss_codazzi_residual_ndim(cs.g, cs.A, 1.0).status() == Status::passed);

  const auto flat = MetricFieldN(identity(flat_grid(3, 6)));
  const auto A = SymTensorFieldN::constant(flat.grid(), std::vector<double>{1, 0, 0, 0, -1, 0, 0, 0, 0});
  const auto b = gauss_codazzi_residual_ndim(flat, A, 0.0);
  CHECK(b.find("gauss_ndim").status == Status::failed);
  CHECK(b.find("gauss_ndim").sup == 1.0);
  CHECK(b.find("codazzi_ndim").sup == 0.0);
}

TEST_CASE("n = 2 agrees with the surface residuals") {
  const auto m = catenoid(-1, 1, 33, 32, 1.0, Mode::sampled);
  const auto g = to_metric_n(m);
  const auto& c = m.chart();
  const SymTensorField2 A(ScalarField::constant(c, 1.0), ScalarField::constant(c, 0.0), ScalarField::constant(c, -1.0));
  const auto An = SymTensorFieldN::constant(g.grid(), std::vector<double>{1, 0, 0, -1}, Mode::sampled);
  const auto nd = gauss_codazzi_residual_ndim(g, An, 0.0);
  const auto g2 = gauss_residual_2d(m, A, {});
  for (std::size_t k = 0; k < c.size(); ++k)
    CHECK(nd.find("gauss_ndim").residual[k] ==
          doctest::Approx(std::abs(g2.residual[k]) * std::exp(4 * m.u().at(k))).epsilon(1e-9));
  CHECK(nd.find("codazzi_ndim").sup < 1e-12);
  CHECK(codazzi_residual_2d(m, A).sup < 1e-12);
}

TEST_CASE("minimality") {
  const auto cl = clifford_torus(1, 3, {8, 8, 8});
  CHECK(minimality_check(cl.g, cl.A).sup < 1e-12);
  const auto r = minimality_check(cl.g, cl.g.tensor());
  CHECK(r.status == Status::failed);
  CHECK(r.sup == doctest::Approx(3.0));
  const auto zero = SymTensorFieldN::constant(cl.g.grid(), std::vector<double>(9, 0.0));
  CHECK(minimality_check(cl.g, zero).sup == 0.0);
}

TEST_CASE("boundary umbilicity") {
  const Face outer{0, Side::max};
  for (Mode mode : {Mode::analytic, Mode::sampled}) {
    const auto d = flat_disc_in_ball(3, {17, 17, 32}, 0.5, mode);
    const auto B = face_second_fundamental_form(d.g, outer);
    const auto r = boundary_umbilic_check(d.g, d.A, B, d.params);
    CHECK(r.status() == Status::passed);
    CHECK(r.find("normal_A_axis0_max").sup == 0.0);
    if (mode == Mode::analytic) CHECK(r.find("umbilic_axis0_max").sup < 1e-12);

    auto flipped = d.params;
    flipped.boundary["axis0_max"].sign = -1;
    CHECK(boundary_umbilic_check(d.g, d.A, B, flipped).find("umbilic_axis0_max").status == Status::failed);
  }
  const auto d = flat_disc_in_ball(2, {17, 16});
  const auto B = face_second_fundamental_form(d.g, outer);
  auto geodesic = d.params;
  geodesic.boundary["axis0_max"].b = 0.0;
  const auto r = boundary_umbilic_check(d.g, d.A, B, geodesic);
  double bmax = 0.0;
  for (const auto& v : B.values)
    for (double x : v) bmax = std::max(bmax, std::abs(x));
  CHECK(r.find("umbilic_axis0_max").sup == doctest::Approx(bmax));

  CHECK_THROWS_AS(face_second_fundamental_form(d.g, Face{0, Side::min}), PreconditionError);
  geodesic.boundary["axis0_max"].b = -1.0;
  CHECK_THROWS_AS(boundary_umbilic_check(d.g, d.A, B, geodesic), PreconditionError);
}

TEST_CASE("gbar against A o A") {
  const auto cl = clifford_torus(1, 3, {10, 10, 10});
  const auto r = gbar_compose_residual(abar_metric(cl.g, 1.0), cl.g, cl.A);
  CHECK(r.passed());
  CHECK(r.sup < 1e-12);
  // A = 0 on the Clifford torus leaves gbar itself, whose largest entry is 2 g_00 = 2/3
  const auto zero = SymTensorFieldN::constant(cl.g.grid(), std::vector<double>(9, 0.0));
  const auto z = gbar_compose_residual(abar_metric(cl.g, 1.0), cl.g, zero);
  CHECK(z.status == Status::failed);

  const auto cs = clifford_torus(1, 3, {16, 16, 16}, Mode::sampled);
  const auto s = gbar_compose_residual(abar_metric(cs.g, 1.0), cs.g, cs.A);
  CHECK(s.passed());
  CHECK(s.sup < 0.01);
}
