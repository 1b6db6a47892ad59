#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "surfmmp/surfmmp.hpp"

namespace {

using namespace surfmmp;

std::vector<testing::Instance> ruled_instances(std::size_t blowups) {
  testing::Rng rng(11);
  std::vector<testing::Instance> out;
  for (int i = 0; i < 32; ++i) {
    auto inst = testing::random_ruled(rng, blowups);
    testing::randomize_boundary(rng, inst, false);
    out.push_back(std::move(inst));
  }
  return out;
}

void BM_ExtremalRays(benchmark::State& state) {
  const auto insts = ruled_instances(static_cast<std::size_t>(state.range(0)));
  std::vector<Pair> pairs;
  for (const auto& i : insts) pairs.push_back(i.pair());
  std::size_t k = 0;
  for (auto _ : state) {
    const std::size_t j = k++ % insts.size();
    benchmark::DoNotOptimize(negative_extremal_rays(pairs[j], insts[j].fib));
  }
}
BENCHMARK(BM_ExtremalRays)->DenseRange(2, 8, 3);

void BM_RunMmp(benchmark::State& state) {
  const auto insts = ruled_instances(static_cast<std::size_t>(state.range(0)));
  std::vector<Pair> pairs;
  for (const auto& i : insts) pairs.push_back(i.pair());
  std::size_t k = 0;
  for (auto _ : state) {
    const std::size_t j = k++ % insts.size();
    benchmark::DoNotOptimize(run_mmp(pairs[j], insts[j].fib, MmpMode::kQF));
  }
}
BENCHMARK(BM_RunMmp)->DenseRange(2, 8, 3);

void BM_FiberedMmp(benchmark::State& state) {
  testing::Rng rng(5);
  std::vector<testing::Instance> insts;
  for (int i = 0; i < 64; ++i) insts.push_back(testing::random_fibered(rng, false));
  std::vector<Pair> pairs;
  for (const auto& i : insts) pairs.push_back(i.pair());
  std::size_t k = 0;
  for (auto _ : state) {
    const std::size_t j = k++ % insts.size();
    benchmark::DoNotOptimize(run_mmp(pairs[j], insts[j].fib, MmpMode::kQF));
  }
}
BENCHMARK(BM_FiberedMmp);

}  // namespace
