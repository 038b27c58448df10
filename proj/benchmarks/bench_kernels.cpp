#include <random>

#include <benchmark/benchmark.h>

#include "rrk/relative.hpp"
#include "rrk/sampling.hpp"
#include "rrk/sip_banach.hpp"

namespace {

using namespace rrk;

KernelEval separable_gaussian(std::size_t m, std::mt19937_64& rng) {
  return build_kernel(random_kernel_spec(KernelFamily::separable_gaussian, m, rng));
}

void BM_Gram(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = separable_gaussian(3, rng);
  const auto pts = random_points(n, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gram(k, pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gram)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_CheckPsd(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto k = separable_gaussian(4, rng);
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(check_psd(k, pts));
}
BENCHMARK(BM_CheckPsd)->Arg(12)->Arg(48)->Arg(96);

void BM_FitValues(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto k = separable_gaussian(2, rng);
  std::vector<ValueConstraint> cs;
  for (int i = 0; i < state.range(0); ++i) cs.push_back({random_point(3, rng), random_complex_vector(2, rng)});
  for (auto _ : state) benchmark::DoNotOptimize(fit_values(k, cs, 1e-8));
}
BENCHMARK(BM_FitValues)->Arg(8)->Arg(32)->Arg(64);

void BM_FitDifferences(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto k = separable_gaussian(2, rng);
  std::vector<DifferenceConstraint> cs;
  for (int i = 0; i < state.range(0); ++i) {
    cs.push_back({random_point(3, rng), random_point(3, rng), random_complex_vector(2, rng)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_differences(k, cs, 1e-8));
}
BENCHMARK(BM_FitDifferences)->Arg(8)->Arg(32)->Arg(64);

void BM_Sip(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto n = static_cast<std::size_t>(state.range(0));
  const SipVector f(SipSpace{3.0, n}, random_complex_vector(n, rng));
  const SipVector g(SipSpace{3.0, n}, random_complex_vector(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(sip(f, g));
}
BENCHMARK(BM_Sip)->Arg(4)->Arg(64)->Arg(1024);

void BM_SipAxiomReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sip_axiom_report(SipSpace{1.5, 4}, 1000, 6));
}
BENCHMARK(BM_SipAxiomReport);

}  // namespace

BENCHMARK_MAIN();
