// Serial reference vs OpenMP kernels.  Run with OMP_NUM_THREADS set to compare.

#include <benchmark/benchmark.h>

#include "cstar/gns.hpp"
#include "cstar/kernels.hpp"
#include "cstar/laws.hpp"

using namespace cstar;

namespace {

Algebra bench_algebra(int n) { return Algebra({n, n + 1}); }

State bench_state(int n) {
  std::mt19937_64 rng(1);
  return random_state(bench_algebra(n), rng);
}

void BM_GramReference(benchmark::State& st) {
  const State w = bench_state(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::gram_reference(w.algebra(), w.coeffs()));
}

void BM_Gram(benchmark::State& st, Execution exec) {
  const State w = bench_state(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::gram(w.algebra(), w.coeffs(), exec));
}

void BM_QuotientActionReference(benchmark::State& st) {
  const GnsRep g = gns_construct(bench_state(static_cast<int>(st.range(0))));
  const Matrix w = g.gram * g.embed;
  for (auto _ : st) benchmark::DoNotOptimize(kernels::quotient_action_reference(g.state.algebra(), g.embed, w));
}

void BM_QuotientAction(benchmark::State& st, Execution exec) {
  const GnsRep g = gns_construct(bench_state(static_cast<int>(st.range(0))));
  const Matrix w = g.gram * g.embed;
  for (auto _ : st) benchmark::DoNotOptimize(kernels::quotient_action(g.state.algebra(), g.embed, w, exec));
}

void BM_Sweep(benchmark::State& st, Execution exec) {
  LawOptions opts;
  opts.exec = exec;
  for (auto _ : st) benchmark::DoNotOptimize(run_sweep(InstanceGenerator(0), static_cast<int>(st.range(0)), opts));
}

}  // namespace

BENCHMARK(BM_GramReference)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK_CAPTURE(BM_Gram, serial, Execution::serial)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK_CAPTURE(BM_Gram, parallel, Execution::parallel)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_QuotientActionReference)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK_CAPTURE(BM_QuotientAction, serial, Execution::serial)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK_CAPTURE(BM_QuotientAction, parallel, Execution::parallel)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK_CAPTURE(BM_Sweep, serial, Execution::serial)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, parallel, Execution::parallel)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
