#include <benchmark/benchmark.h>

#include <random>

#include "sramntt/engine.hpp"
#include "sramntt/refarith.hpp"

using namespace sramntt;

namespace {

std::vector<std::uint64_t> random_poly(std::uint64_t n, std::uint64_t q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> v(n);
  for (auto& c : v) c = rng() % q;
  return v;
}

// Wall time of one in-memory modular multiply across 512 columns; the
// simulated cycle count is reported alongside.
void BM_PimModMul(benchmark::State& state) {
  const auto width = static_cast<unsigned>(state.range(0));
  std::uint64_t q = (std::uint64_t{1} << (width - 2)) - 1;
  while (!modmath::is_prime(q)) --q;
  SramBank bank(rows_for_width(width), 512);
  const auto l = BankLayout::for_width(width);
  write_words(bank, l.a(), random_poly(512, q, 1));
  write_words(bank, l.b(), random_poly(512, q, 2));
  std::uint64_t cycles = 0;
  for (auto _ : state) {
    cycles = pim_mod_mul(bank, l.a(), l.b(), l.s0(), l.s1(), q).cycles;
    benchmark::ClobberMemory();
  }
  state.counters["sim_cycles"] = static_cast<double>(cycles);
  state.SetItemsProcessed(state.iterations() * 512);
}
BENCHMARK(BM_PimModMul)->Arg(8)->Arg(14)->Arg(16)->Arg(24)->Arg(32);

void BM_NttSimulated(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto p = validate_params(12289, n, 16, Mode::Negacyclic);
  const auto a = random_poly(n, p.q, 3);
  std::uint64_t cycles = 0;
  for (auto _ : state) {
    auto bank = make_bank(p);
    const auto r = ntt(bank, p, a);
    cycles = r.report.total();
    benchmark::DoNotOptimize(r.values.data());
  }
  state.counters["sim_cycles"] = static_cast<double>(cycles);
}
BENCHMARK(BM_NttSimulated)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

void BM_PolymulSimulated(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto p = validate_params(12289, n, 16, Mode::Negacyclic);
  const auto a = random_poly(n, p.q, 4);
  const auto s = random_poly(n, p.q, 5);
  for (auto _ : state) {
    auto bank = make_bank(p);
    benchmark::DoNotOptimize(polymul(bank, p, a, s).values.data());
  }
}
BENCHMARK(BM_PolymulSimulated)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_DirectNttOracle(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto p = validate_params(12289, n, 16, Mode::Negacyclic);
  const auto a = random_poly(n, p.q, 6);
  for (auto _ : state) benchmark::DoNotOptimize(ref::direct_ntt(p, a).data());
}
BENCHMARK(BM_DirectNttOracle)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_PredictCycles(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_cycles(1024, 32, Workload::Polymul, Mode::Negacyclic));
  }
}
BENCHMARK(BM_PredictCycles);

void BM_Barrett(benchmark::State& state) {
  const auto ctx = ref::make_barrett(12289);
  std::uint64_t x = 1234;
  for (auto _ : state) {
    x = ref::barrett_mul(ctx, x, 5678);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Barrett);

void BM_Montgomery(benchmark::State& state) {
  const auto ctx = ref::make_montgomery(12289);
  std::uint64_t x = 1234;
  for (auto _ : state) {
    x = ref::montgomery_mul(ctx, x, 5678);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Montgomery);

}  // namespace

BENCHMARK_MAIN();
