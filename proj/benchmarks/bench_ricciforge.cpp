#include <benchmark/benchmark.h>

#include "ricciforge/hyperdim.hpp"
#include "ricciforge/io.hpp"
#include "ricciforge/reconstruct.hpp"
#include "ricciforge/ricci2d.hpp"
#include "ricciforge/surfaces.hpp"

using namespace ricciforge;

namespace {

GridChart square(int n) { return GridChart::spanning(n, n, -1, 1, -1, 1); }

void BM_SampledJets(benchmark::State& state) {
  const auto chart = square(static_cast<int>(state.range(0)));
  std::vector<double> v(chart.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::sin(0.01 * k);
  for (auto _ : state) benchmark::DoNotOptimize(ScalarField::sampled(chart, v));
  state.SetItemsProcessed(state.iterations() * chart.size());
}
BENCHMARK(BM_SampledJets)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_Flatness(benchmark::State& state) {
  const auto m = enneper(square(static_cast<int>(state.range(0))), Mode::sampled);
  for (auto _ : state) benchmark::DoNotOptimize(ricci_flatness_residual(m, {.c = 0.0, .H = 0.0}));
  state.SetItemsProcessed(state.iterations() * m.chart().size());
}
BENCHMARK(BM_Flatness)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_Roundtrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = catenoid(-1, 1, n + 1, n, 1.0, Mode::sampled, {Edge::east, Edge::west});
  for (auto _ : state) benchmark::DoNotOptimize(roundtrip(m, {}, Phase::real_on(Edge::east)));
  state.SetItemsProcessed(state.iterations() * m.chart().size());
}
BENCHMARK(BM_Roundtrip)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_AbarMetric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto d = clifford_torus(1, 3, {n, n, n}, Mode::sampled);
  for (auto _ : state) benchmark::DoNotOptimize(abar_metric(d.g, 1.0));
  state.SetItemsProcessed(state.iterations() * d.g.grid().size());
}
BENCHMARK(BM_AbarMetric)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_ConditionII(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto d = clifford_torus(1, 3, {n, n, n}, Mode::sampled);
  const auto ab = abar_metric(d.g, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(condition_ii_residual(d.g, d.A, ab, 1.0));
  state.SetItemsProcessed(state.iterations() * d.g.grid().size());
}
BENCHMARK(BM_ConditionII)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_ChartJson(benchmark::State& state) {
  const auto m = enneper(square(static_cast<int>(state.range(0))));
  auto f = io::chart_file(m.chart());
  io::put_scalar(f, "u", m.u());
  for (auto _ : state) benchmark::DoNotOptimize(io::parse_chart(nlohmann::json::parse(io::dump(io::to_json(f)))));
  state.SetBytesProcessed(state.iterations() * io::dump(io::to_json(f)).size());
}
BENCHMARK(BM_ChartJson)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
