#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ricciforge/io.hpp"
#include "ricciforge/ricci2d.hpp"
#include "ricciforge/surfaces.hpp"

using namespace ricciforge;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "ricciforge_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("2-D chart files round-trip byte for byte") {
  const auto cc = critical_catenoid(33, 32);
  auto f = io::chart_file(cc.metric.chart());
  io::put_scalar(f, "u", cc.metric.u());
  const auto a = scratch("cc.json"), b = scratch("cc2.json");
  io::save_chart(f, a);
  const auto loaded = io::load_chart(a);
  io::save_chart(loaded, b);
  CHECK(slurp(a) == slurp(b));

  CHECK(loaded.two_d);
  CHECK(loaded.chart() == cc.metric.chart());
  const auto m = io::conformal_metric(loaded);
  CHECK(m.mode() == Mode::sampled);
  for (std::size_t k = 0; k < m.chart().size(); ++k) CHECK(m.u().at(k) == cc.metric.u().at(k));

  const auto j = io::load_json(a);
  for (const char* key : {"nx", "ny", "hx", "hy", "x0", "y0", "periodic_x", "periodic_y", "boundary_edges", "fields"})
    CHECK(j.contains(key));
  CHECK(j["boundary_edges"].size() == 2);
  CHECK(j["fields"]["u"].size() == 33u * 32u);
}

TEST_CASE("row-major layout") {
  const auto chart = GridChart::spanning(5, 4, 0, 4, 0, 3);
  auto f = io::chart_file(chart);
  io::put_scalar(f, "x", ScalarField::sample(chart, [](double x, double y) { return x + 10 * y; }));
  const auto j = io::to_json(f);
  CHECK(j["fields"]["x"][1].get<double>() == 1.0);
  CHECK(j["fields"]["x"][5].get<double>() == 10.0);
}

TEST_CASE("n-D chart files") {
  const auto cl = clifford_torus(1, 3, {6, 6, 7});
  auto f = io::chart_file(cl.g.grid());
  io::put_tensor(f, "g", cl.g.tensor());
  io::put_tensor(f, "A", cl.A);
  CHECK(f.has("g_00"));
  CHECK(f.has("A_12"));
  CHECK_FALSE(f.has("g_10"));
  const auto a = scratch("cl.json"), b = scratch("cl2.json");
  io::save_chart(f, a);
  const auto loaded = io::load_chart(a);
  io::save_chart(loaded, b);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(loaded.two_d);
  CHECK(loaded.grid == cl.g.grid());
  CHECK(io::has_tensor(loaded, "A", 3));
  const auto g = io::tensor(loaded, "g");
  CHECK(g.mode() == Mode::sampled);
  CHECK(g.components() == cl.g.tensor().components());
  CHECK(io::load_json(a)["dims"] == nlohmann::json::array({6, 6, 7}));

  const auto d = flat_disc_in_ball(3, {5, 5, 8});
  const auto jd = io::to_json(io::chart_file(d.g.grid()));
  CHECK(jd["boundary_faces"] == nlohmann::json::array({"axis0_max"}));
}

TEST_CASE("malformed chart files") {
  using nlohmann::json;
  const json good = io::to_json(io::chart_file(GridChart::spanning(5, 5, 0, 1, 0, 1)));
  CHECK_NOTHROW(io::parse_chart(good));
  for (const char* key : {"nx", "hy", "periodic_x", "boundary_edges"}) {
    json bad = good;
    bad.erase(key);
    CHECK_THROWS_AS(io::parse_chart(bad), FormatError);
  }
  json bad = good;
  bad["fields"]["u"] = json::array({1, 2, 3});
  CHECK_THROWS_AS(io::parse_chart(bad), FormatError);
  bad = good;
  bad["fields"]["u"] = "x";
  CHECK_THROWS_AS(io::parse_chart(bad), FormatError);
  bad = good;
  bad["boundary_edges"] = json::array({"up"});
  CHECK_THROWS_AS(io::parse_chart(bad), FormatError);
  bad = good;
  bad["nx"] = "five";
  CHECK_THROWS_AS(io::parse_chart(bad), FormatError);
  bad = good;
  bad["nx"] = 2;
  CHECK_THROWS_AS(io::parse_chart(bad), SizingError);
  CHECK_THROWS_AS(io::parse_chart(json::array()), FormatError);
  CHECK_THROWS_AS(io::load_chart(scratch("missing.json")), FormatError);
  CHECK_THROWS_AS(io::conformal_metric(io::parse_chart(good)), FormatError);

  std::ofstream(scratch("garbage.json")) << "{ not json";
  CHECK_THROWS_AS(io::load_chart(scratch("garbage.json")), FormatError);
}

TEST_CASE("report JSON") {
  const auto m = enneper(GridChart::spanning(17, 17, -1, 1, -1, 1));
  const auto r = ricci_flatness_residual(m, {.c = 0, .H = 0});
  const auto j = io::to_json(r);
  for (const char* key : {"check", "sup", "l2", "excluded", "tol", "pass", "grid", "mode"}) CHECK(j.contains(key));
  CHECK(j["check"] == "ricci_flatness");
  CHECK(j["pass"] == true);
  CHECK(j["mode"] == "analytic");
  CHECK(j["grid"]["dims"] == nlohmann::json::array({17, 17}));

  const auto flat = ricci_flatness_residual(plane(GridChart::spanning(9, 9, 0, 1, 0, 1)), {.c = 0, .H = 0});
  const auto jf = io::to_json(flat);
  CHECK(jf["status"] == "degenerate");
  CHECK(jf["pass"] == true);
  CHECK(jf["note"].get<std::string>().rfind("degenerate", 0) == 0);

  ReportBundle b{{r, flat}};
  CHECK(io::to_json(b)["status"] == "degenerate");
  const auto csv = io::residual_csv(b);
  CHECK(csv.rfind("check,index,residual,masked\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 17 * 17 + 9 * 9);
  CHECK(io::dump(j) == io::dump(nlohmann::json::parse(io::dump(j))));
  CHECK(io::sidecar_path("out/a.json") == fs::path("out/a.json.meta.json"));
}

TEST_CASE("parameter JSON") {
  SpaceFormParams p{.c = -1.0, .H = 1.0};
  p.boundary["east"] = {.b = 0.0, .sign = -1, .alpha = 1.25};
  const auto q = io::parse_params(io::to_json(p));
  CHECK(q.c == -1.0);
  CHECK(q.H == 1.0);
  CHECK(q.record("east").sign == -1);
  CHECK(q.record("east").alpha == 1.25);
  CHECK(io::parse_params(nlohmann::json{{"c", 0.0}, {"H", 0.0}}).boundary.empty());
  CHECK_THROWS_AS(io::parse_params(nlohmann::json{{"c", 0.0}}), FormatError);
  CHECK_THROWS_AS(io::parse_params(nlohmann::json{{"c", 0.0}, {"H", 0.0}, {"boundary", {{"east", {{"sign", 1}}}}}}),
                  FormatError);
}
