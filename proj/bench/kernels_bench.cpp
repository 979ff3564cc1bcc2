// Serial reference vs OpenMP kernels on block-sized inputs.

#include <benchmark/benchmark.h>

#include <vector>

#include "ncaudit/bench.hpp"
#include "ncaudit/kernels.hpp"
#include "ncaudit/rng.hpp"

namespace {

using namespace ncaudit;

struct CombineInput {
  std::vector<SymbolVector> rows;
  std::vector<std::span<const Symbol>> views;
  SymbolVector coeffs;
  SymbolVector out;

  CombineInput(std::size_t count, std::size_t len) {
    Rng rng = Rng::seeded(7);
    for (std::size_t i = 0; i < count; ++i) rows.push_back(rng.symbols(len));
    for (const auto& r : rows) views.emplace_back(r);
    coeffs = rng.symbols(count);
    out.assign(len, 0);
  }
};

template <void (*Kernel)(std::span<Symbol>, std::span<const std::span<const Symbol>>, std::span<const Symbol>)>
void BM_Combine(benchmark::State& state) {
  CombineInput in(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    Kernel(in.out, in.views, in.coeffs);
    benchmark::DoNotOptimize(in.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_Combine<kernels::serial::combine>)->Name("combine/serial")->Args({300, 4096})->Args({500, 4596});
BENCHMARK(BM_Combine<kernels::parallel::combine>)->Name("combine/parallel")->Args({300, 4096})->Args({500, 4596});

template <Symbol (*Kernel)(std::span<const Symbol>, std::span<const Symbol>)>
void BM_Dot(benchmark::State& state) {
  Rng rng = Rng::seeded(11);
  const auto u = rng.symbols(static_cast<std::size_t>(state.range(0)));
  const auto v = rng.symbols(u.size());
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(u, v));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Dot<kernels::serial::dot>)->Name("dot/serial")->Arg(4596)->Arg(1 << 20);
BENCHMARK(BM_Dot<kernels::parallel::dot>)->Name("dot/parallel")->Arg(4596)->Arg(1 << 20);

template <void (*Kernel)(std::span<Symbol>, std::size_t, std::size_t, std::size_t, std::size_t)>
void BM_Eliminate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = Rng::seeded(13);
  const auto base = rng.symbols(n * n);
  for (auto _ : state) {
    state.PauseTiming();
    auto m = base;
    m[0] = 1;
    state.ResumeTiming();
    Kernel(m, n, n, 0, 0);
    benchmark::DoNotOptimize(m.data());
  }
}
BENCHMARK(BM_Eliminate<kernels::serial::eliminate>)->Name("eliminate/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_Eliminate<kernels::parallel::eliminate>)->Name("eliminate/parallel")->Arg(256)->Arg(1024);

void BM_AuditRound(benchmark::State& state) {
  bench::Config cfg;
  cfg.trials = 5;
  cfg.mode = PrfMode::test;
  for (auto _ : state) {
    const auto report = bench::run(cfg);
    state.counters["gen_ms"] = report.gen.median_ms;
    state.counters["verify_ms"] = report.verify.median_ms;
  }
}
BENCHMARK(BM_AuditRound)->Name("audit_round/table_params")->Iterations(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
