#include <benchmark/benchmark.h>

#include "copcp/catalog.hpp"
#include "copcp/cones.hpp"
#include "copcp/graphs.hpp"
#include "copcp/pairwise.hpp"

using namespace copcp;

static void BM_SigmaSdpCycle(benchmark::State& st) {
  Graph g = cycle_graph(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(sigma(g, SigmaStrategy::Sdp).value);
}
BENCHMARK(BM_SigmaSdpCycle)->Arg(5)->Arg(9)->Arg(13)->Unit(benchmark::kMillisecond);

static void BM_SigmaSdpRank3(benchmark::State& st) {
  Graph g = catalog(rank3_table()[st.range(0)]);
  st.SetLabel(g.name());
  for (auto _ : st) benchmark::DoNotOptimize(sigma(g, SigmaStrategy::Sdp).value);
}
BENCHMARK(BM_SigmaSdpRank3)->DenseRange(0, 11)->Unit(benchmark::kMillisecond);

static void BM_CliqueNumber(benchmark::State& st) {
  Graph g = paley(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(clique_number(g));
}
BENCHMARK(BM_CliqueNumber)->Arg(13)->Arg(29)->Arg(37)->Arg(61);

static void BM_KrHorn(benchmark::State& st) {
  SymMatrix H = horn();
  const int r = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(is_kr(H, r).status);
}
BENCHMARK(BM_KrHorn)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_PdecPetersen(benchmark::State& st) {
  Graph g = catalog("petersen");
  const int n = g.n();
  MatrixPair p(Mat::Ones(n, n), HermMatrix(SymMatrix(Mat(Mat::Identity(n, n) - 1.9 * g.adjacency().mat()))));
  for (auto _ : st) benchmark::DoNotOptimize(is_pdec(p).cert.shift);
}
BENCHMARK(BM_PdecPetersen)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
