#include <benchmark/benchmark.h>

#include <random>

#include "nlpm/grid.hpp"
#include "nlpm/likelihood.hpp"
#include "nlpm/synth.hpp"

namespace {

using namespace nlpm;

SynthNetwork study1(std::size_t n) {
  SynthSpec spec;
  spec.N = n;
  spec.seed = 42;
  return generate(spec, LinkFunction());
}

void BM_ExactLogLik(benchmark::State& st) {
  const auto sn = study1(static_cast<std::size_t>(st.range(0)));
  const LatentState state{sn.positions, sn.params, std::nullopt};
  for (auto _ : st) benchmark::DoNotOptimize(exact_log_lik(state, sn.network, LinkFunction()));
}
BENCHMARK(BM_ExactLogLik)->Arg(200)->Arg(600)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_NoisyLogLik(benchmark::State& st) {
  const auto sn = study1(static_cast<std::size_t>(st.range(0)));
  LatentState state{sn.positions, sn.params, std::nullopt};
  state.rebuild_grid(sn.network, static_cast<std::uint32_t>(st.range(1)), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(noisy_log_lik(state, sn.network, LinkFunction()));
}
BENCHMARK(BM_NoisyLogLik)
    ->ArgsProduct({{200, 600, 1000}, {8, 16}})
    ->Unit(benchmark::kMillisecond);

void BM_ExactLrZ(benchmark::State& st) {
  const auto sn = study1(static_cast<std::size_t>(st.range(0)));
  const LatentState state{sn.positions, sn.params, std::nullopt};
  NodeId i = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        exact_log_lr_z(state, sn.network, LinkFunction(), i, {0.1, -0.2}));
    i = (i + 1) % static_cast<NodeId>(sn.positions.size());
  }
}
BENCHMARK(BM_ExactLrZ)->Arg(250)->Arg(1000);

void BM_NoisyLrZ(benchmark::State& st) {
  const auto sn = study1(static_cast<std::size_t>(st.range(0)));
  LatentState state{sn.positions, sn.params, std::nullopt};
  state.rebuild_grid(sn.network, static_cast<std::uint32_t>(st.range(1)), 1.0);
  NodeId i = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        noisy_log_lr_z(state, sn.network, LinkFunction(), i, {0.1, -0.2}));
    i = (i + 1) % static_cast<NodeId>(sn.positions.size());
  }
}
BENCHMARK(BM_NoisyLrZ)->ArgsProduct({{250, 1000}, {8, 16}});

void BM_GridMove(benchmark::State& st) {
  auto sn = study1(static_cast<std::size_t>(st.range(0)));
  BoxGrid grid(sn.positions, sn.network, static_cast<std::uint32_t>(st.range(1)), 1.0);
  Rng rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto n = static_cast<NodeId>(sn.positions.size());
  for (auto _ : st) {
    const NodeId i = static_cast<NodeId>(rng() % n);
    const double x = u(rng);
    grid.move_node(i, {x, u(rng)}, sn.network);
  }
}
BENCHMARK(BM_GridMove)->ArgsProduct({{250, 1000}, {8, 16}});

}  // namespace
