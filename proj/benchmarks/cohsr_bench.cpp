#include <benchmark/benchmark.h>

#include "cohsr/focus.hpp"
#include "cohsr/metrics.hpp"
#include "cohsr/network.hpp"
#include "cohsr/phase_retrieval.hpp"
#include "cohsr/propagation.hpp"
#include "cohsr/synth.hpp"
#include "cohsr/weights.hpp"

using namespace cohsr;

namespace {

ComplexField phantom(int size, std::uint64_t seed = 1) {
  PhantomSpec spec;
  spec.width = spec.height = size;
  spec.seed = seed;
  return generate_phantom(spec);
}

void BM_Propagate(benchmark::State& state) {
  const ComplexField f = phantom(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(f, 300.0));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.size()));
}
BENCHMARK(BM_Propagate)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

// One outer iteration visits every height once.
void BM_RecoveryIteration(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const HologramStack stack = simulate_stack(phantom(size), default_heights());
  RecoverySettings s;
  s.max_iterations = 1;
  s.stop_rel_residual = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(multi_height_recover(stack, s));
}
BENCHMARK(BM_RecoveryIteration)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_TamuraOfGradient(benchmark::State& state) {
  const Image a = phantom(512).amplitude();
  for (auto _ : state) benchmark::DoNotOptimize(tamura_of_gradient(a));
}
BENCHMARK(BM_TamuraOfGradient)->Unit(benchmark::kMillisecond);

void BM_GeneratorInfer(benchmark::State& state) {
  const auto spec = net::NetSpec::pixel_limited();
  const net::Generator gen(spec, net::random_weights(spec, net::NetRole::generator, 3));
  const auto input = net::field_to_tensor(phantom(static_cast<int>(state.range(0))), spec.in_channels);
  for (auto _ : state) benchmark::DoNotOptimize(gen.infer(input));
}
BENCHMARK(BM_GeneratorInfer)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SsimWindowed(benchmark::State& state) {
  const Image x = phantom(256, 1).phase();
  const Image y = phantom(256, 2).phase();
  const auto k = SsimConstants::for_label(y);
  for (auto _ : state) benchmark::DoNotOptimize(ssim_windowed(x, y, k.c1, k.c2));
}
BENCHMARK(BM_SsimWindowed)->Unit(benchmark::kMillisecond);

void BM_RadialSpectrum(benchmark::State& state) {
  const Image x = phantom(512).phase();
  for (auto _ : state) benchmark::DoNotOptimize(radial_spectrum(x, 64, 1.12));
}
BENCHMARK(BM_RadialSpectrum)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
