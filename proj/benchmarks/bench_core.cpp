#include <benchmark/benchmark.h>

#include "mordellh10/h10.hpp"

using namespace mh10;

namespace {

const auto kPrimes = arith::sieve_primes(20'000);

void BM_ApCharacterSum(benchmark::State& state) {
  const mordell::MordellCurve e(-3456);
  for (auto _ : state) {
    std::int64_t s = 0;
    for (auto p : kPrimes) {
      if (p > 3) s += mordell::ap(e, p);
    }
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ApCharacterSum)->Unit(benchmark::kMillisecond);

void BM_ApFast(benchmark::State& state) {
  const mordell::MordellCurve e(-3456);
  for (auto _ : state) {
    std::int64_t s = 0;
    for (auto p : kPrimes) {
      if (p > 3) s += mordell::ap_fast(e, p);
    }
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ApFast)->Unit(benchmark::kMillisecond);

void BM_LValue(benchmark::State& state) {
  const mordell::MordellCurve e(Integer(-432) * 25);
  for (auto _ : state) benchmark::DoNotOptimize(lseries::l_value(e).value);
}
BENCHMARK(BM_LValue)->Unit(benchmark::kMillisecond);

void BM_Sieve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(h10::enumerate_S_sieve(state.range(0)).size());
}
BENCHMARK(BM_Sieve)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_PointSearch(benchmark::State& state) {
  const mordell::MordellCurve e(-3456);
  for (auto _ : state) benchmark::DoNotOptimize(mordell::point_search(e, state.range(0)));
}
BENCHMARK(BM_PointSearch)->Arg(10'000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
