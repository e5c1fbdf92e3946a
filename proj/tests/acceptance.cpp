// Acceptance suite: one line per criterion, nonzero exit when any fails.
#include <chrono>
#include <cstring>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ricciforge/hyperdim.hpp"
#include "ricciforge/io.hpp"
#include "ricciforge/lawson.hpp"
#include "ricciforge/reconstruct.hpp"
#include "ricciforge/ricci2d.hpp"
#include "ricciforge/surfaces.hpp"

using namespace ricciforge;
using std::numbers::pi;

namespace {

// Collects named sub-results for one criterion.
class Ledger {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failures_.empty(); }
  std::string detail() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + ("FAILED " + f);
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    return out;
  }

 private:
  std::vector<std::string> failures_, notes_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double order(double coarse, double fine, double ratio = 2.0) { return std::log(coarse / fine) / std::log(ratio); }

GridChart square(int n) { return GridChart::spanning(n, n, -1, 1, -1, 1); }

const SpaceFormParams kMinimal{.c = 0.0, .H = 0.0};

void flatness(Ledger& l) {
  using Maker = std::function<ConformalMetric2D(int, Mode)>;
  const std::vector<std::pair<std::string, Maker>> cases{
      {"enneper", [](int n, Mode m) { return enneper(square(n + 1), m); }},
      {"catenoid", [](int n, Mode m) { return catenoid(-1, 1, n + 1, n, 1.0, m); }}};
  for (const auto& [name, make] : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto a = ricci_flatness_residual(make(128, Mode::analytic), kMinimal);
    const auto s64 = ricci_flatness_residual(make(64, Mode::sampled), kMinimal);
    const auto s128 = ricci_flatness_residual(make(128, Mode::sampled), kMinimal);
    const double t = seconds_since(t0);
    const double p = order(s64.sup, s128.sup);
    l.expect(a.sup <= 1e-9 && a.excluded == 0, name + " analytic sup " + fmt(a.sup));
    l.expect(p >= 1.9, name + " sampled order " + fmt(p));
    l.expect(t < 5.0, name + " runtime " + fmt(t) + " s");
    l.note(name + ": analytic " + fmt(a.sup) + ", order " + fmt(p) + ", " + fmt(t) + " s");
  }
}

void ricci_condition(Ledger& l) {
  for (const auto& [name, m] : {std::pair{"enneper", enneper(square(65))},
                                std::pair{"catenoid", catenoid(-1, 1, 65, 64, 1.0)}}) {
    const auto r = moroianu_residual(m);
    const auto e = moroianu_flatness_equivalence(m);
    l.expect(r.sup <= 1e-9, std::string(name) + " residual " + fmt(r.sup));
    l.expect(e.sup <= 1e-10, std::string(name) + " equivalence " + fmt(e.sup));
    l.note(std::string(name) + ": residual " + fmt(r.sup) + ", equivalence " + fmt(e.sup) + " on " +
           std::to_string(e.total - e.excluded) + " nodes");
  }
}

// Newton on T tanh T = 1, independent of the bisection in the library.
double newton_T() {
  double t = 1.2;
  for (int i = 0; i < 60; ++i) {
    const double c = std::cosh(t);
    t -= (t * std::tanh(t) - 1.0) / (std::tanh(t) + t / (c * c));
  }
  return t;
}

void critical(Ledger& l) {
  const double T = critical_catenoid_T();
  l.expect(std::abs(T - newton_T()) <= 1e-10, "T against Newton");
  l.expect(std::abs(T - 1.1996786) < 5e-8, "T reference value");
  const auto cc = critical_catenoid(65, 64);
  const auto K = gaussian_curvature(cc.metric);
  double geo = 0.0, neumann = 0.0, flux = 0.0;
  for (Edge e : {Edge::east, Edge::west}) {
    for (double k : geodesic_curvature_boundary(cc.metric, e).values) geo = std::max(geo, std::abs(k - 1.0));
    flux = std::max(flux, boundary_flux_residual(cc.metric, K, cc.params, e).sup);
  }
  const auto bundle = ricci_with_boundary_check(cc.metric);
  for (const auto& r : bundle.reports)
    if (r.check.rfind("ricci_neumann_", 0) == 0) neumann = std::max(neumann, r.sup);
  l.expect(geo <= 1e-8, "geodesic curvature");
  l.expect(neumann <= 1e-8, "dK/dnu + 4K");
  l.expect(flux <= 1e-8, "boundary flux");
  l.note("T " + std::to_string(T) + ", |T - Newton| " + fmt(std::abs(T - newton_T())) + ", |k - 1| " + fmt(geo) +
         ", Neumann " + fmt(neumann) + ", flux " + fmt(flux));
}

void round_trip(Ledger& l) {
  const auto m = catenoid(-1, 1, 65, 64, 1.0, Mode::analytic, {Edge::east, Edge::west});
  const auto rt = roundtrip(m, kMinimal, Phase::real_on(Edge::east));
  l.expect(rt.result.has_value(), "analytic reconstruction");
  if (!rt.result) return;
  double phi = 0.0;
  for (std::size_t k = 0; k < m.chart().size(); ++k)
    phi = std::max(phi, std::abs(rt.result->phi.at(k) - std::complex<double>(1.0, 0.0)));
  const auto& b = rt.reports;
  l.expect(phi <= 1e-8, "sup |phi - 1| " + fmt(phi));
  l.expect(b.find("cauchy_riemann").sup <= 1e-10, "Cauchy-Riemann");
  for (const char* c : {"gauss", "codazzi", "simons"}) l.expect(b.find(c).sup <= 1e-8, std::string(c) + " analytic");
  for (const char* c : {"boundary_A_east", "boundary_A_west"}) l.expect(b.find(c).sup <= 1e-10, c);
  l.expect(b.status() == Status::passed, "analytic bundle");
  l.note("|phi-1| " + fmt(phi) + ", CR " + fmt(b.find("cauchy_riemann").sup) + ", Gauss " + fmt(b.find("gauss").sup) +
         ", Codazzi " + fmt(b.find("codazzi").sup) + ", Simons " + fmt(b.find("simons").sup) + ", A_xy edge " +
         fmt(std::max(b.find("boundary_A_east").sup, b.find("boundary_A_west").sup)));

  double simons[2];
  int q = 0;
  for (int n : {64, 128}) {
    const auto s = roundtrip(catenoid(-1, 1, n + 1, n, 1.0, Mode::sampled, {Edge::east, Edge::west}), kMinimal,
                             Phase::real_on(Edge::east));
    l.expect(s.result.has_value() && s.reports.status() == Status::passed, "sampled bundle n=" + std::to_string(n));
    for (const char* c : {"gauss", "codazzi", "simons"})
      l.expect(s.reports.find(c).sup <= s.reports.find(c).tol, std::string(c) + " sampled n=" + std::to_string(n));
    simons[q++] = s.reports.find("simons").sup;
  }
  const double p = order(simons[0], simons[1]);
  l.expect(p >= 1.8, "sampled Simons order " + fmt(p));
  l.note("sampled Simons " + fmt(simons[0]) + " -> " + fmt(simons[1]) + " (order " + fmt(p) + ")");
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void cousins(Ledger& l) {
  const SpaceFormParams horo{.c = -1.0, .H = 1.0};
  for (const auto& [name, m] : {std::pair{"catenoid", catenoid(-1, 1, 65, 64, 1.0, Mode::sampled)},
                                std::pair{"enneper", enneper(square(65), Mode::sampled)}}) {
    const auto a = ricci_flatness_residual(m, kMinimal), b = ricci_flatness_residual(m, horo);
    l.expect(same_bits(a.residual, b.residual) && a.mask == b.mask, std::string(name) + " bit-identical flatness");
  }

  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> cd(-5.0, 5.0), hd(-3.0, 3.0), bd(0.0, 4.0), td(0.0, 10.0);
  int passed = 0, exact = 0, bitwise = 0;
  for (int k = 0; k < 1000; ++k) {
    SpaceFormParams p{.c = cd(rng), .H = hd(rng)};
    p.boundary["east"] = {.b = p.c + bd(rng)};
    p.boundary["west"] = {.b = p.c + bd(rng), .sign = -1};
    const double ct = p.curvature_sum() - td(rng);
    const auto inv = cousin_involution_check(p, ct);
    passed += inv.passed;
    bitwise += inv.h_error == 0.0 && inv.b_error == 0.0;
    const auto q = cousin_params(p, ct);
    exact += q.curvature_sum() == p.curvature_sum() && q.wall_curvature("east") == p.wall_curvature("east") &&
             q.wall_curvature("west") == p.wall_curvature("west");
  }
  l.expect(passed == 1000, "involution " + std::to_string(passed) + "/1000");
  l.expect(bitwise == 1000, "involution bit for bit " + std::to_string(bitwise) + "/1000");
  l.expect(exact == 1000, "preserved sums exact " + std::to_string(exact) + "/1000");

  SpaceFormParams p = kMinimal;
  p.boundary["east"] = {.b = 1.0};
  const auto q = cousin_params(p, -1.0);
  l.expect(q.c == -1.0 && q.H == 1.0 && q.record("east").b == 0.0, "horosphere mapping");
  l.note("bit-identical fields on catenoid and enneper, involution " + std::to_string(passed) + "/1000 (" +
         std::to_string(bitwise) + " bit for bit), (0,0,{1}) -> (" + fmt(q.c) + "," + fmt(q.H) + ",{" + fmt(q.record("east").b) + "})");
}

void auxiliary_metric(Ledger& l) {
  {
    const auto d = clifford_torus(1, 3, {64, 64, 64}, Mode::sampled);
    const auto ab = abar_metric(d.g, 1.0);
    double ev_err = 0.0;
    for (std::size_t node = 0; node < d.g.grid().size(); ++node) {
      const auto ev = generalized_eigenvalues(ab.gbar.matrix(node), d.g.tensor().matrix(node), 3);
      ev_err = std::max({ev_err, std::abs(ev[0] - 0.5), std::abs(ev[1] - 0.5), std::abs(ev[2] - 2.0)});
    }
    const auto comp = gbar_compose_residual(ab, d.g, d.A);
    l.expect(ev_err <= 1e-3, "eigenvalues at N=64: " + fmt(ev_err));
    l.expect(comp.sup <= 1e-3, "gbar vs A o A at N=64: " + fmt(comp.sup));
    l.note("N=64 eigenvalue error " + fmt(ev_err) + ", gbar - A o A " + fmt(comp.sup));
  }
  double ci[2], cii[2];
  int q = 0;
  for (int n : {16, 32}) {
    const auto d = clifford_torus(1, 3, {n, n, n}, Mode::sampled);
    const auto ab = abar_metric(d.g, 1.0);
    const auto r1 = condition_i_residual(d.g, d.A, ab), r2 = condition_ii_residual(d.g, d.A, ab, 1.0);
    l.expect(r1.passed() && r1.excluded == 0, "condition (i) at N=" + std::to_string(n));
    l.expect(r2.passed() && r2.excluded == 0, "condition (ii) at N=" + std::to_string(n));
    ci[q] = r1.sup;
    cii[q++] = r2.sup;
  }
  const double p1 = order(ci[0], ci[1]), p2 = order(cii[0], cii[1]);
  l.expect(p1 >= 1.5, "condition (i) order " + fmt(p1));
  l.expect(p2 >= 1.5, "condition (ii) order " + fmt(p2));
  l.note("conditions (i)/(ii) orders " + fmt(p1) + "/" + fmt(p2));

  const auto a = clifford_torus(1, 3, {16, 16, 16});
  const auto mn = minimality_check(a.g, a.A);
  l.expect(mn.sup <= 1e-12, "minimality " + fmt(mn.sup));
  const auto ab = abar_metric(a.g, 1.0);
  double slope[2];
  q = 0;
  for (double eps : {1e-3, 1e-2}) {
    const SymTensorFieldN g = a.g.tensor(), A = a.A;
    auto provider = ComponentJets<3>([g, A, eps](std::size_t node, int order, Jet<3>* out) {
      std::array<Jet<3>, 6> gj, aj;
      g.jets<3>(node, order, gj.data());
      A.jets<3>(node, order, aj.data());
      const Jet<3> x = Jet<3>::variable(0, g.grid().coords(node)[0], order);
      for (int k = 0; k < 6; ++k) out[k] = aj[k] + eps * x * gj[k];
    });
    const auto Ap = SymTensorFieldN::derived(g.grid(), provider, Mode::analytic, 4);
    slope[q++] = condition_i_residual(a.g, Ap, ab).sup / eps;
  }
  const double lin = slope[1] / slope[0];
  l.expect(std::abs(lin - 1.0) <= 0.2, "perturbation slope ratio " + fmt(lin));
  l.note("minimality " + fmt(mn.sup) + ", slope ratio " + fmt(lin));
}

void umbilicity(Ledger& l) {
  const Face rim{0, Side::max};
  for (Mode mode : {Mode::analytic, Mode::sampled}) {
    const auto d = flat_disc_in_ball(3, {33, 33, 32}, 0.5, mode);
    const auto B = face_second_fundamental_form(d.g, rim);
    const auto r = boundary_umbilic_check(d.g, d.A, B, d.params);
    const auto& umb = r.find("umbilic_axis0_max");
    const auto& nA = r.find("normal_A_axis0_max");
    const std::string m = to_string(mode);
    l.expect(umb.passed(), m + " B - g " + fmt(umb.sup));
    l.expect(nA.sup == 0.0, m + " A(., nu) " + fmt(nA.sup));
    auto flipped = d.params;
    flipped.boundary["axis0_max"].sign = -1;
    const auto f = boundary_umbilic_check(d.g, d.A, B, flipped);
    l.expect(f.find("umbilic_axis0_max").status == Status::failed, m + " sign flip detected");
    l.note(m + ": B - g " + fmt(umb.sup) + " (tol " + fmt(umb.tol) + "), flipped " +
           fmt(f.find("umbilic_axis0_max").sup));
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void plumbing(Ledger& l) {
  const auto c = square(41);
  const std::vector<std::pair<ScalarField, ZeroSet>> fields{
      {ScalarField::constant(c, 0.0), ZeroSet::everywhere_zero},
      {ScalarField::constant(c, 1.0), ZeroSet::no_zeros},
      {ScalarField::analytic(c, [](const Jet2& x, const Jet2& y) { return x * x + y * y; }), ZeroSet::isolated},
      {ScalarField::analytic(c, [](const Jet2& x, const Jet2&) { return x; }), ZeroSet::non_isolated}};
  for (const auto& [f, want] : fields) {
    const auto got = zero_set_classify(f);
    l.expect(got == want, "zero set " + to_string(got) + " expected " + to_string(want));
  }

  // e^z is holomorphic and 2 pi periodic in y: the two staircases differ by
  // trapezoid error only.
  double gap[2];
  int q = 0;
  for (int n : {32, 64}) {
    const auto chart = GridChart::spanning(n + 1, n, -1, 1, 0, 2 * pi, false, true);
    const ComplexField v(ScalarField::sample(chart, [](double x, double y) { return std::exp(x) * std::cos(y); }),
                         ScalarField::sample(chart, [](double x, double y) { return std::exp(x) * std::sin(y); }));
    gap[q] = integrate_from(v, chart.center_node()).path_gap();
    const double h = std::max(chart.hx(), chart.hy());
    l.expect(gap[q] <= h * h, "path gap " + fmt(gap[q]) + " at n=" + std::to_string(n));
    ++q;
  }
  l.expect(order(gap[0], gap[1]) >= 1.8, "path gap order " + fmt(order(gap[0], gap[1])));

  const auto dir = std::filesystem::temp_directory_path() / "ricciforge_acceptance";
  std::filesystem::create_directories(dir);
  bool exact = true;
  const auto cc = critical_catenoid(33, 32);
  auto f2 = io::chart_file(cc.metric.chart());
  io::put_scalar(f2, "u", cc.metric.u());
  const auto cl = clifford_torus(1, 3, {8, 8, 8});
  auto fn = io::chart_file(cl.g.grid());
  io::put_tensor(fn, "g", cl.g.tensor());
  io::put_tensor(fn, "A", cl.A);
  for (const auto& [name, f] : {std::pair{"critical", f2}, std::pair{"clifford", fn}}) {
    const auto a = dir / (std::string(name) + ".json"), b = dir / (std::string(name) + "_again.json");
    io::save_chart(f, a);
    io::save_chart(io::load_chart(a), b);
    exact = exact && slurp(a) == slurp(b) && !slurp(a).empty();
  }
  l.expect(exact, "chart JSON byte-exact round trip");
  l.note("four zero-set classes, path gap " + fmt(gap[0]) + " -> " + fmt(gap[1]) + ", JSON round trip exact");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Ledger&)>>> criteria{
      {"flatness condition", flatness},
      {"Ricci condition and its log form", ricci_condition},
      {"critical catenoid", critical},
      {"reconstruction round trip", round_trip},
      {"cousin invariance", cousins},
      {"auxiliary metric and integrability in dimension 3", auxiliary_metric},
      {"boundary umbilicity", umbilicity},
      {"plumbing", plumbing}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Ledger l;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(l);
    } catch (const std::exception& e) {
      l.expect(false, std::string("exception: ") + e.what());
    }
    failed += !l.ok();
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (l.ok() ? "PASS" : "FAIL") << " ["
              << fmt(seconds_since(t0)) << " s] " << l.detail() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
