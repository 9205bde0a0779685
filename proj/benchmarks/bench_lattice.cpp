#include <benchmark/benchmark.h>

#include <magnus/lattice.hpp>
#include <random>

using namespace magnus;

namespace {

// deterministic generator sets; entries small so the interesting cost is
// the reduction bookkeeping, not bignum growth
std::vector<IntVec> random_rows(size_t count, size_t rank, int spread, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-spread, spread);
  std::vector<IntVec> rows(count);
  for (auto& r : rows) {
    r.assign(rank, BigInt(0));
    for (auto& x : r) x = d(rng);
  }
  return rows;
}

void BM_hnf_rows(benchmark::State& state) {
  size_t rank = static_cast<size_t>(state.range(0));
  auto rows = random_rows(2 * rank, rank, 9, 42);
  for (auto _ : state) benchmark::DoNotOptimize(hnf_rows(rows, rank));
}
BENCHMARK(BM_hnf_rows)->Arg(3)->Arg(8)->Arg(16)->Arg(32);

void BM_hnf_rows_wide_entries(benchmark::State& state) {
  size_t rank = 8;
  auto rows = random_rows(16, rank, 1 << 20, 42);
  for (auto _ : state) benchmark::DoNotOptimize(hnf_rows(rows, rank));
}
BENCHMARK(BM_hnf_rows_wide_entries);

void BM_lattice_contains(benchmark::State& state) {
  size_t rank = static_cast<size_t>(state.range(0));
  Lattice l(rank, random_rows(2 * rank, rank, 9, 7));
  auto probes = random_rows(64, rank, 40, 11);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(l.contains(probes[i]));
    i = (i + 1) % probes.size();
  }
}
BENCHMARK(BM_lattice_contains)->Arg(3)->Arg(8)->Arg(24);

void BM_lattice_reduce(benchmark::State& state) {
  size_t rank = 8;
  Lattice l(rank, random_rows(16, rank, 9, 7));
  auto probes = random_rows(64, rank, 1000, 13);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(l.reduce(probes[i]));
    i = (i + 1) % probes.size();
  }
}
BENCHMARK(BM_lattice_reduce);

void BM_lattice_index(benchmark::State& state) {
  size_t rank = 8;
  auto rows = random_rows(16, rank, 9, 21);
  Lattice super(rank, rows);
  std::vector<IntVec> scaled;
  for (const auto& r : rows) {
    IntVec s = r;
    for (auto& x : s) x *= 6;
    scaled.push_back(std::move(s));
  }
  Lattice sub(rank, scaled);
  for (auto _ : state) benchmark::DoNotOptimize(sub.index_in(super));
}
BENCHMARK(BM_lattice_index);

}  // namespace

BENCHMARK_MAIN();
