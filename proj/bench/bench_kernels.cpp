// Serial reference against the OpenMP kernels. Thread count follows
// OMP_NUM_THREADS.

#include "vmedad/baselines.hpp"
#include "vmedad/depth.hpp"
#include "vmedad/reference.hpp"
#include "vmedad/simulate.hpp"

#include <benchmark/benchmark.h>

namespace {

vmedad::DataMatrix sample(benchmark::State& state) {
  const auto n = state.range(0);
  const auto d = state.range(1);
  return vmedad::sample_mvn(n, vmedad::Vector::Zero(d), Eigen::MatrixXd::Identity(d, d), 1);
}

void depth_serial(benchmark::State& state) {
  const auto x = sample(state);
  for (auto _ : state) benchmark::DoNotOptimize(vmedad::serial::spatial_depth_all(x));
}

void depth_parallel(benchmark::State& state) {
  const auto x = sample(state);
  for (auto _ : state) benchmark::DoNotOptimize(vmedad::spatial_depth_all(x));
}

void mardia_serial(benchmark::State& state) {
  const auto z = vmedad::standardize(sample(state), vmedad::CovarianceDivisor::unbiased);
  for (auto _ : state) benchmark::DoNotOptimize(vmedad::serial::mardia_skewness_sum(z));
}

void mardia_parallel(benchmark::State& state) {
  const auto x = sample(state);
  // includes the standardization, which the serial case gets for free
  for (auto _ : state) benchmark::DoNotOptimize(vmedad::mardia(x).skewness);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {500, 2000, 5000}) b->Args({n, 2})->Args({n, 10});
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(depth_serial)->Apply(sizes);
BENCHMARK(depth_parallel)->Apply(sizes);
BENCHMARK(mardia_serial)->Apply(sizes);
BENCHMARK(mardia_parallel)->Apply(sizes);

BENCHMARK_MAIN();
