#include <benchmark/benchmark.h>

#include "blanketlab/blanket.hpp"
#include "blanketlab/projection.hpp"
#include "blanketlab/stability.hpp"
#include "fixtures.hpp"
#include "random_graphs.hpp"

namespace {

using namespace blanketlab;

void BM_MarkovBlanketFixture(benchmark::State& state) {
  const auto g = testing::fixture("fig6");
  for (auto _ : state) benchmark::DoNotOptimize(markov_blanket(g, Family::DMG).blanket.size());
}
BENCHMARK(BM_MarkovBlanketFixture);

void BM_BlanketOracleFixture(benchmark::State& state) {
  const auto g = testing::fixture("fig4");
  for (auto _ : state) benchmark::DoNotOptimize(minimal_blanket_oracle(g, Criterion::Sigma, g.predictors()).size());
}
BENCHMARK(BM_BlanketOracleFixture)->Unit(benchmark::kMillisecond);

void BM_StableBlanketFixture(benchmark::State& state) {
  static const std::pair<const char*, Mode> cases[] = {
      {"fig1", Mode::S1}, {"fig3", Mode::S2}, {"fig4", Mode::S3}, {"fig6", Mode::S4}};
  const auto& [name, mode] = cases[state.range(0)];
  const auto g = testing::fixture(name);
  state.SetLabel(name);
  for (auto _ : state) benchmark::DoNotOptimize(stable_blanket(g, mode).frontier.size());
}
BENCHMARK(BM_StableBlanketFixture)->DenseRange(0, 3);

void BM_StableBlanketRandom(benchmark::State& state) {
  testing::Rng rng(99);
  std::vector<MixedGraph> graphs;
  for (int k = 0; k < 16; ++k)
    graphs.push_back(testing::random_setting_graph(rng, Mode::S4, static_cast<std::size_t>(state.range(0)), 3, 0.2,
                                                   0.15));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(stable_blanket(graphs[i++ % graphs.size()], Mode::S4).unique);
}
BENCHMARK(BM_StableBlanketRandom)->Arg(8)->Arg(16)->Arg(32);

void BM_LatentProject(benchmark::State& state) {
  testing::Rng rng(7);
  const auto g = testing::random_hidden_graph(rng, static_cast<std::size_t>(state.range(0)),
                                              static_cast<std::size_t>(state.range(0)) / 2, 0.15, false);
  for (auto _ : state) benchmark::DoNotOptimize(latent_project(g).size());
}
BENCHMARK(BM_LatentProject)->Arg(10)->Arg(40)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
