#include <benchmark/benchmark.h>

#include "nlpm/sampler.hpp"
#include "nlpm/synth.hpp"

namespace {

using namespace nlpm;

// Arguments: N, mode (0 exact, 1 grid), M.
void BM_Sweep(benchmark::State& st) {
  SynthSpec spec;
  spec.N = static_cast<std::size_t>(st.range(0));
  spec.seed = 42;
  const LinkFunction link;
  const auto sn = generate(spec, link);
  SamplerConfig cfg;
  cfg.mode = st.range(1) ? Mode::Noisy : Mode::Exact;
  cfg.M = static_cast<std::uint32_t>(st.range(2));
  cfg.init_z = sn.positions;
  cfg.init_psi = sn.params;
  Sampler sampler(sn.network, link, ParameterSpace::study_default(), cfg);
  for (auto _ : st) sampler.sweep();
}
BENCHMARK(BM_Sweep)
    ->Args({200, 0, 0})
    ->Args({200, 1, 8})
    ->Args({200, 1, 16})
    ->Args({600, 0, 0})
    ->Args({600, 1, 8})
    ->Args({1000, 1, 8})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
