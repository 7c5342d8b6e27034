#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "scbench/agreement.hpp"
#include "scbench/downsample.hpp"
#include "scbench/hclust.hpp"
#include "scbench/pca.hpp"
#include "scbench/synthetic.hpp"

namespace {

using namespace scbench;

SyntheticData fixture(std::size_t genes, std::size_t cells) {
  SyntheticConfig cfg;
  cfg.n_genes = genes;
  cfg.n_cells = cells;
  cfg.base_mean = 5.0;
  cfg.seed = 3;
  return simulate_synthetic(cfg);
}

void BM_PoissonDownsample(benchmark::State& state) {
  const auto ref = to_real(fixture(500, static_cast<std::size_t>(state.range(0))).counts);
  DownsampleConfig cfg;
  cfg.seed = 9;
  const auto tau = sample_efficiencies(ref.n_cells(), cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(poisson_downsample(ref, tau.tau, 9, static_cast<unsigned>(state.range(1))));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ref.nnz()));
}
BENCHMARK(BM_PoissonDownsample)->Args({500, 1})->Args({2000, 1})->Args({2000, 4})->UseRealTime();

void BM_MatchMarginals(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ref = to_real(fixture(400, n).counts);
  const auto original = fixture(800, 2 * n).counts;
  const auto targets = align_targets_by_rank(draw_targets(original, 400, n, 5), ref);
  for (auto _ : state) benchmark::DoNotOptimize(match_marginals(ref, targets));
}
BENCHMARK(BM_MatchMarginals)->Arg(300)->Arg(1200);

Eigen::MatrixXd random_points(std::size_t n, std::size_t d) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
  return x;
}

void BM_Ward(benchmark::State& state) {
  const auto x = random_points(static_cast<std::size_t>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(hclust_ward(x, 5));
}
BENCHMARK(BM_Ward)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Pca(benchmark::State& state) {
  const auto m = to_real(fixture(static_cast<std::size_t>(state.range(0)), 1000).counts);
  PcaOptions opt;
  opt.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(pca(m, opt));
}
BENCHMARK(BM_Pca)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_AdjustedRand(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> pick(0, 9);
  std::vector<int> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = pick(rng);
    b[i] = pick(rng);
  }
  const Partition p(a), q(b);
  for (auto _ : state) benchmark::DoNotOptimize(adjusted_rand_index(p, q));
}
BENCHMARK(BM_AdjustedRand)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
