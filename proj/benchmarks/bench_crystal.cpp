#include <benchmark/benchmark.h>

#include <magnus/crystal.hpp>
#include <random>

using namespace magnus;

namespace {

std::vector<CrystalElement> sample_elements(const CrystalGroup& g, size_t count,
                                            unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> q(0, g.p() - 1);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::vector<CrystalElement> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    IntVec t(g.rank());
    for (auto& x : t) x = coord(rng);
    out.push_back(g.make(q(rng), q(rng), std::move(t)));
  }
  return out;
}

void BM_mul(benchmark::State& state) {
  const CrystalGroup& g = state.range(0) == 2 ? CrystalGroup::hw()
                                              : CrystalGroup::gp(static_cast<int>(state.range(0)));
  auto els = sample_elements(g, 64, 5);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.mul(els[i], els[(i + 17) % els.size()]));
    i = (i + 1) % els.size();
  }
}
BENCHMARK(BM_mul)->Arg(2)->Arg(3)->Arg(5)->Arg(7);

void BM_power(benchmark::State& state) {
  const CrystalGroup& g = CrystalGroup::gp(5);
  auto els = sample_elements(g, 16, 9);
  BigInt e = BigInt(1) << 64;
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.power(els[i], e));
    i = (i + 1) % els.size();
  }
}
BENCHMARK(BM_power);

void BM_commutator_module(benchmark::State& state) {
  const CrystalGroup& g = state.range(0) == 2 ? CrystalGroup::hw()
                                              : CrystalGroup::gp(static_cast<int>(state.range(0)));
  auto els = sample_elements(g, 32, 23);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.commutator_module(els[i]));
    i = (i + 1) % els.size();
  }
}
BENCHMARK(BM_commutator_module)->Arg(2)->Arg(3)->Arg(5);

void BM_normal_closure(benchmark::State& state) {
  const CrystalGroup& g = state.range(0) == 2 ? CrystalGroup::hw()
                                              : CrystalGroup::gp(static_cast<int>(state.range(0)));
  auto els = sample_elements(g, 32, 31);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.normal_closure(els[i]));
    i = (i + 1) % els.size();
  }
}
BENCHMARK(BM_normal_closure)->Arg(2)->Arg(3)->Arg(5);

void BM_are_conjugate(benchmark::State& state) {
  const CrystalGroup& g = CrystalGroup::gp(3);
  auto els = sample_elements(g, 64, 37);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.are_conjugate(els[i], els[(i + 9) % els.size()]));
    i = (i + 1) % els.size();
  }
}
BENCHMARK(BM_are_conjugate);

void BM_closure_contains(benchmark::State& state) {
  const CrystalGroup& g = CrystalGroup::gp(3);
  auto n = g.normal_closure(g.gen_u());
  auto els = sample_elements(g, 64, 41);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.closure_contains(n, els[i]));
    i = (i + 1) % els.size();
  }
}
BENCHMARK(BM_closure_contains);

}  // namespace

BENCHMARK_MAIN();
