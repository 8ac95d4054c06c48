#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "swloc/bloom.hpp"
#include "swloc/graph.hpp"
#include "swloc/random.hpp"
#include "swloc/sim.hpp"
#include "swloc/workload.hpp"

using namespace swloc;

namespace {

std::vector<std::string> keys(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("file-" + std::to_string(i));
  return out;
}

void BM_BloomInsert(benchmark::State& state) {
  const auto items = keys(4096);
  bloom::BloomFilter f(bloom::size_for(items.size(), 0.001));
  std::size_t i = 0;
  for (auto _ : state) f.insert(items[i++ & 4095]);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BloomInsert);

void BM_BloomContains(benchmark::State& state) {
  const auto items = keys(4096);
  bloom::BloomFilter f(bloom::size_for(items.size(), 0.001));
  for (const auto& s : items) f.insert(s);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(f.contains(items[i++ & 4095]));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BloomContains);

void BM_BloomUnion(benchmark::State& state) {
  bloom::BloomParams p;
  p.m = static_cast<std::uint64_t>(state.range(0));
  p.k = 7;
  bloom::BloomFilter a(p), b(p);
  for (const auto& s : keys(1000)) a.insert(s);
  for (auto _ : state) benchmark::DoNotOptimize(bloom::bloom_union(a, b));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(p.m / 8));
}
BENCHMARK(BM_BloomUnion)->Arg(1 << 14)->Arg(1 << 20);

void BM_BloomRoundTrip(benchmark::State& state) {
  bloom::BloomParams p;
  p.m = 1 << 17;
  p.k = 7;
  bloom::BloomFilter f(p);
  for (const auto& s : keys(8000)) f.insert(s);
  for (auto _ : state) benchmark::DoNotOptimize(bloom::BloomFilter::deserialize(f.serialize()));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(f.serialized_size()));
}
BENCHMARK(BM_BloomRoundTrip);

void BM_SizeFor(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bloom::size_for(10'000'000, 0.001));
}
BENCHMARK(BM_SizeFor);

void BM_GnmClustering(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = graph::random_graph_gnm(n, 4 * n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(graph::clustering_coefficient(g));
}
BENCHMARK(BM_GnmClustering)->Arg(1000)->Arg(10000);

void BM_GnmPathLength(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = graph::random_graph_gnm(n, 4 * n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(graph::average_path_length(g));
}
BENCHMARK(BM_GnmPathLength)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_GnmGenerate(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(graph::random_graph_gnm(5000, 20000, seed++));
}
BENCHMARK(BM_GnmGenerate)->Unit(benchmark::kMillisecond);

void BM_ZipfDraw(benchmark::State& state) {
  const workload::ZipfSampler sampler({1.0, 1'000'000, 1});
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ZipfDraw);

void BM_FractionServed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(workload::fraction_served(1.0, 1'000'000, 0.01));
}
BENCHMARK(BM_FractionServed)->Unit(benchmark::kMillisecond);

void BM_SimStep(benchmark::State& state) {
  sim::SimConfig cfg;
  cfg.overlay.n_clusters = 10;
  cfg.overlay.nodes_per_cluster = static_cast<std::size_t>(state.range(0));
  cfg.overlay.intra_degree = 6;
  cfg.overlay.wiring_param = 2.0;
  cfg.requests.zipf = {1.0, 1000, 1};
  cfg.rounds = 1'000'000;
  sim::Simulator sim(cfg);
  for (int i = 0; i < 30; ++i) sim.step();
  for (auto _ : state) sim.step();
}
BENCHMARK(BM_SimStep)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
