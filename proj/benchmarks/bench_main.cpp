#include <benchmark/benchmark.h>

#include "telegraph/density.hpp"
#include "telegraph/params.hpp"
#include "telegraph/rates.hpp"
#include "telegraph/rng.hpp"
#include "telegraph/sampler.hpp"

namespace {

const telegraph::ModelParams kReference =
    telegraph::validate_params(1.0, 1.0, 1.0, 2.0, 0.5);

void BM_sample_damped_path(benchmark::State& state) {
  const double horizon = static_cast<double>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    telegraph::RngStream stream(1, i++);
    benchmark::DoNotOptimize(
        telegraph::sample_damped_path(kReference, horizon, stream));
  }
}
BENCHMARK(BM_sample_damped_path)->Arg(4)->Arg(8)->Arg(12);

void BM_sample_standard_path(benchmark::State& state) {
  const double horizon = static_cast<double>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    telegraph::RngStream stream(1, i++);
    benchmark::DoNotOptimize(
        telegraph::sample_standard_path(kReference, horizon, stream));
  }
}
BENCHMARK(BM_sample_standard_path)->Arg(10)->Arg(100)->Arg(1000);

void BM_density_point(benchmark::State& state) {
  double x = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(telegraph::density_p(x, 5.0, kReference));
    x = x < 0.9 ? x + 0.01 : -1.0;
  }
}
BENCHMARK(BM_density_point);

void BM_interval_probability(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  const telegraph::AtomFlags both{true, true};
  for (auto _ : state) {
    benchmark::DoNotOptimize(telegraph::interval_probability(
        -kReference.c2 * t, kReference.c1 * t, t, kReference, both));
  }
}
BENCHMARK(BM_interval_probability)->Arg(1)->Arg(10)->Arg(100);

void BM_rate_damped(benchmark::State& state) {
  double x = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(telegraph::rate_ID(x, kReference));
    x = x < 1.0 ? x + 0.001 : -2.0;
  }
}
BENCHMARK(BM_rate_damped);

void BM_decay_rate_numeric(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        telegraph::decay_rate_numeric(telegraph::ProcessKind::standard, kReference));
  }
}
BENCHMARK(BM_decay_rate_numeric);

} // namespace

BENCHMARK_MAIN();
