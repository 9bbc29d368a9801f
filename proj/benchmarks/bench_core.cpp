#include <benchmark/benchmark.h>

#include <complex>
#include <map>
#include <vector>

#include "sicfiber/detector.hpp"
#include "sicfiber/fiber.hpp"
#include "sicfiber/rng.hpp"

using namespace sicfiber;

namespace {

CpanParams bench_params() {
  CpanParams p;
  p.mu_delta = 0.98;
  p.sigma_theta2 = 3e-3;
  p.sigma_delta2 = p.sigma_theta2 * (1.0 - p.mu_delta * p.mu_delta);
  p.sigma_n2 = 1e-3;
  return p;
}

void bench_run_stage(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const int S = static_cast<int>(state.range(1));
  const auto p = bench_params();
  const auto sched = SicSchedule::make(n, S);
  Rng rng(1);
  std::vector<std::complex<double>> x(n);
  for (auto& xi : x) xi = rng.cscg(1.0);
  const auto out = simulate_cpan(p, x, rng);
  std::map<std::size_t, std::complex<double>> decoded;
  for (std::size_t i : sched.decoded_indices(S)) decoded[i] = x[i];

  for (auto _ : state) {
    auto res = run_stage(out.y, decoded, sched, S, p);
    benchmark::DoNotOptimize(res.downward.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}

void bench_ssfm_step(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  FiberParams p;
  p.n_wdm = 1;
  Rng rng(2);
  std::vector<std::complex<double>> x(n);
  for (auto& xi : x) xi = rng.cscg(1e-3);
  const auto w = modulate_wdm(x, {}, p, 8);
  const int steps = 16;

  for (auto _ : state) {
    auto out = ssfm_propagate(w, p, steps, 0, true);
    benchmark::DoNotOptimize(out.samples.data());
  }
  // report per split step over the full waveform
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * steps);
}

void bench_amplitude_detector(benchmark::State& state) {
  const int n_rings = static_cast<int>(state.range(0));
  const auto rings = urr_design(n_rings, 1.0);
  Rng rng(3);
  std::vector<std::complex<double>> ys(1024);
  for (auto& y : ys) y = rng.cscg(1.0);

  for (auto _ : state) {
    for (const auto& y : ys) {
      auto post = detect_amplitudes(y, rings, 1e-2);
      benchmark::DoNotOptimize(post.probs.data());
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 1024);
}

BENCHMARK(bench_run_stage)->Args({1024, 2})->Args({4096, 8})->Args({8192, 64});
BENCHMARK(bench_ssfm_step)->Arg(1024)->Arg(4096);
BENCHMARK(bench_amplitude_detector)->Arg(4)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
