#include <doctest.h>

#include <cmath>
#include <random>

#include "ricciforge/lawson.hpp"
#include "ricciforge/surfaces.hpp"

using namespace ricciforge;

TEST_CASE("cousin parameters") {
  SpaceFormParams p;
  p.boundary["east"] = {.b = 1.0};
  const auto q = cousin_params(p, -1.0);
  CHECK(q.c == -1.0);
  CHECK(q.H == 1.0);
  CHECK(q.record("east").b == 0.0);
  CHECK(q.record("east").sign == 1);

  const auto r = cousin_params({.c = 1.0, .H = 0.0}, 0.0);
  CHECK(r.c == 0.0);
  CHECK(r.H == 1.0);
  CHECK(r.boundary.empty());

  SpaceFormParams s{.c = -0.5, .H = -0.75};
  s.boundary["west"] = {.b = 2.0, .sign = -1, .alpha = 1.0};
  const auto same = cousin_params(s, -0.5);
  CHECK(same.H == 0.75);
  CHECK(same.record("west").b == 2.0);
  CHECK(same.record("west").sign == -1);
  CHECK(same.record("west").alpha == 1.0);

  CHECK_THROWS_WITH_AS(cousin_params({.c = 0.0, .H = 1.0}, 1.5), doctest::Contains("no cousin"), PreconditionError);
  SpaceFormParams bad;
  bad.boundary["east"] = {.b = -1.0};
  CHECK_THROWS_AS(cousin_params(bad, -1.0), PreconditionError);
}

TEST_CASE("cousin involution") {
  SpaceFormParams p;
  p.boundary["east"] = {.b = 1.0};
  auto r = cousin_involution_check(p, -1.0);
  CHECK(r.passed);
  CHECK(r.back.H == 0.0);
  CHECK(r.back.record("east").b == 1.0);

  SpaceFormParams q{.c = 1.0, .H = 2.0};
  q.boundary["north"] = {.b = 3.0};
  const auto cq = cousin_params(q, 0.0);
  CHECK(cq.H == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(cq.record("north").b == 2.0);
  CHECK(cousin_involution_check(q, 0.0).passed);

  const auto neg = cousin_involution_check({.c = 0.0, .H = -2.0}, -3.0);
  CHECK(neg.passed);
  CHECK(neg.back.H == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("cousin properties on random triples") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> cd(-5.0, 5.0), hd(-3.0, 3.0), bd(0.0, 4.0), td(0.0, 10.0);
  int exact_sum = 0;
  for (int k = 0; k < 1000; ++k) {
    SpaceFormParams p{.c = cd(rng), .H = hd(rng)};
    p.boundary["east"] = {.b = p.c + bd(rng)};
    p.boundary["west"] = {.b = p.c + bd(rng), .sign = -1};
    const double s = p.curvature_sum();
    const double ct = s - td(rng);
    const auto q = cousin_params(p, ct);
    const double tol = 8 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(s), std::abs(ct)});
    CHECK(std::abs(q.c + q.H * q.H - s) <= tol);
    exact_sum += q.curvature_sum() == s;
    CHECK(q.H >= 0.0);
    for (const auto& [label, r] : p.boundary) {
      CHECK(std::abs((q.record(label).b - q.c) - (r.b - p.c)) <= tol * std::max(1.0, r.b));
      CHECK(q.wall_curvature(label) == p.wall_curvature(label));
      CHECK(q.record(label).sign == r.sign);
    }
    CHECK(cousin_involution_check(p, ct).passed);
  }
  CHECK(exact_sum == 1000);
}

TEST_CASE("intrinsic residuals agree across cousins") {
  const auto cat = catenoid(-1, 1, 33, 32, 1.0, Mode::sampled);
  const auto r = residual_invariance_check(cat, {.c = 0.0, .H = 0.0}, {.c = -1.0, .H = 1.0});
  CHECK(r.passed());
  CHECK(r.flatness_identical);

  const auto enn = enneper(GridChart::spanning(33, 33, -1, 1, -1, 1), Mode::sampled);
  CHECK(residual_invariance_check(enn, {.c = 0.0, .H = 0.0}, {.c = -4.0, .H = 2.0}).passed());
  CHECK_THROWS_AS(residual_invariance_check(enn, {.c = 0.0, .H = 0.0}, {.c = 0.0, .H = 1.0}), PreconditionError);

  const auto cc = critical_catenoid(33, 32, Mode::sampled);
  const auto cousin = cousin_params(cc.params, -1.0);
  const auto b = residual_invariance_check(cc.metric, cc.params, cousin);
  CHECK(b.passed());
  CHECK(b.flux_identical.size() == 2);

  auto other = cousin;
  other.boundary["east"].b += 0.5;
  CHECK_THROWS_AS(residual_invariance_check(cc.metric, cc.params, other), PreconditionError);
}

TEST_CASE("mapping back returns the original parameters") {
  SpaceFormParams p{.c = 0.3, .H = -0.7};
  p.boundary["east"] = {.b = 1.1, .sign = -1, .alpha = 1.0};
  const auto q = cousin_params(p, -2.9);
  REQUIRE(q.origin);
  const auto back = cousin_params(q, 0.3);
  CHECK(back.c == 0.3);
  CHECK(back.H == 0.7);
  CHECK(back.record("east").b == 1.1);
  CHECK(back.record("east").sign == -1);
  CHECK(back.record("east").alpha == 1.0);
  // and forth again
  const auto again = cousin_params(back, -2.9);
  CHECK(again.H == q.H);
  CHECK(again.record("east").b == q.record("east").b);

  // an edited cousin no longer matches its origin and is mapped afresh
  auto edited = q;
  edited.H = 3.0;
  edited.sum.reset();
  const auto fresh = cousin_params(edited, 0.3);
  CHECK(fresh.H == doctest::Approx(std::sqrt(-2.9 + 9.0 - 0.3)));
  auto rewalled = q;
  rewalled.boundary["east"].b += 1.0;
  rewalled.boundary["east"].excess.reset();
  CHECK(cousin_params(rewalled, 0.3).record("east").b == doctest::Approx(2.1));
}
