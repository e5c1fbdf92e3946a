#include <doctest.h>

#include <cmath>
#include <random>

#include "ricciforge/jet.hpp"
#include "ricciforge/stencil.hpp"

using namespace ricciforge;

TEST_CASE("jet product matches the Leibniz rule") {
  const Jet2 x = Jet2::variable(0, 0.3), y = Jet2::variable(1, -0.7);
  const Jet2 f = x * x * y;  // d/dx = 2xy, d2/dx2 = 2y, d2/dxdy = 2x
  CHECK(f.value() == doctest::Approx(0.09 * -0.7));
  CHECK(f.deriv({1, 0}) == doctest::Approx(2 * 0.3 * -0.7));
  CHECK(f.deriv({2, 0}) == doctest::Approx(-1.4));
  CHECK(f.deriv({1, 1}) == doctest::Approx(0.6));
  CHECK(f.deriv({2, 1}) == doctest::Approx(2.0));
  CHECK(f.deriv({0, 2}) == doctest::Approx(0.0));
}

TEST_CASE("composed elementary functions match closed-form derivatives") {
  const double a = 0.4, b = 1.3;
  const Jet2 x = Jet2::variable(0, a), y = Jet2::variable(1, b);
  const Jet2 f = exp(x) * sin(y);
  CHECK(f.deriv({3, 1}) == doctest::Approx(std::exp(a) * std::cos(b)));
  CHECK(f.deriv({0, 4}) == doctest::Approx(std::exp(a) * std::sin(b)));
  const Jet2 g = log(1.0 + x * x + y * y);
  // d/dx log(1 + r^2) = 2x / (1 + r^2)
  const double q = 1 + a * a + b * b;
  CHECK(g.deriv({1, 0}) == doctest::Approx(2 * a / q));
  CHECK(g.deriv({2, 0}) == doctest::Approx(2 / q - 4 * a * a / (q * q)));
  const Jet2 h = x / y;
  CHECK(h.deriv({1, 2}) == doctest::Approx(2.0 / (b * b * b)));
  const Jet2 c = cosh(x);
  CHECK(c.deriv({4, 0}) == doctest::Approx(std::cosh(a)));
  CHECK(sqrt(y * y).deriv({0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("differentiation lowers the jet order") {
  const Jet<3> z = Jet<3>::variable(2, 2.0);
  const Jet<3> f = z * z * z;
  const Jet<3> d = f.d(2);
  CHECK(d.order() == 3);
  CHECK(d.value() == doctest::Approx(12.0));
  CHECK(d.d(2).d(2).value() == doctest::Approx(6.0));
  CHECK(f.truncated(1).order() == 1);
}

TEST_CASE("Fornberg weights reproduce classical stencils") {
  const double nodes3[] = {-1, 0, 1};
  const auto w = fornberg_weights(2, 0.0, nodes3);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(-2.0));
  CHECK(w[2] == doctest::Approx(1.0));
  const double one_sided[] = {0, 1, 2};
  const auto d1 = fornberg_weights(1, 0.0, one_sided);
  CHECK(d1[0] == doctest::Approx(-1.5));
  CHECK(d1[1] == doctest::Approx(2.0));
  CHECK(d1[2] == doctest::Approx(-0.5));
}

TEST_CASE("axis stencils are exact on low-degree polynomials at every node") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  const int n = 9;
  AxisStencils ax(n, false);
  REQUIRE(ax.max_order() == 4);
  for (int trial = 0; trial < 20; ++trial) {
    // degree k+1 polynomial: the k-th derivative stencil must be exact.
    for (int k = 1; k <= 4; ++k) {
      std::vector<double> c(k + 2);
      for (auto& v : c) v = coef(rng);
      auto p = [&](double x, int deriv) {
        double s = 0.0;
        for (int m = deriv; m < static_cast<int>(c.size()); ++m) {
          double f = 1.0;
          for (int q = 0; q < deriv; ++q) f *= m - q;
          s += c[m] * f * std::pow(x, m - deriv);
        }
        return s;
      };
      for (int i = 0; i < n; ++i) {
        const auto& s = ax.at(k, i);
        double est = 0.0;
        for (std::size_t q = 0; q < s.index.size(); ++q) est += s.weight[q] * p(s.index[q], 0);
        CHECK(est == doctest::Approx(p(i, k)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("small axes cap the derivative order") {
  CHECK(AxisStencils(5, false).max_order() == 2);
  CHECK(AxisStencils(4, false).max_order() == 1);
  CHECK(AxisStencils(5, true).max_order() == 4);
  CHECK_THROWS_AS(AxisStencils(4, false).at(3, 0), SizingError);
}
