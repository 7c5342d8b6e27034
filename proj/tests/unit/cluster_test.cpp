#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "scbench/agreement.hpp"
#include "scbench/hclust.hpp"
#include "scbench/kmeans.hpp"
#include "scbench/pca.hpp"
#include "scbench/pipeline.hpp"
#include "scbench/synthetic.hpp"

namespace scbench {
namespace {

using Eigen::MatrixXd;

MatrixXd centered(MatrixXd x) {
  x.rowwise() -= x.colwise().mean();
  return x;
}

TEST(Pca, RankOneData) {
  MatrixXd x(6, 2);
  for (int i = 0; i < 6; ++i) x.row(i) << i, 2.0 * i;
  PcaOptions opt;
  opt.n_components = 2;
  const auto r = pca_centered(centered(x), opt);
  EXPECT_GT(r.explained_variance[0], 0);
  EXPECT_NEAR(r.explained_variance[1], 0.0, 1e-10);
}

TEST(Pca, MatchesDenseEigendecomposition) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = 2 + trial % 7, cols = 1 + (trial / 7) % 8;
    MatrixXd x(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) x(i, j) = n(rng) * (j + 1);
    const MatrixXd c = centered(x);
    PcaOptions opt;
    opt.n_components = static_cast<std::size_t>(std::min(rows, cols));
    opt.oversample = 0;
    opt.seed = static_cast<std::uint64_t>(trial);
    const auto r = pca_centered(c, opt);
    const auto want = oracle::covariance_eigenvalues(c);
    for (std::size_t k = 0; k < r.explained_variance.size(); ++k)
      EXPECT_NEAR(r.explained_variance[k], want[k], 1e-6) << "trial " << trial << " k " << k;
  }
}

TEST(Pca, ScoresLoadingsInvariants) {
  const auto m = to_real(testing::random_counts(40, 60, 0.5, 30, 2));
  PcaOptions opt;
  opt.n_components = 8;
  opt.seed = 3;
  const auto r = pca(m, opt);
  const MatrixXd gram = r.loadings.transpose() * r.loadings;
  EXPECT_LE((gram - MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-8);
  for (int k = 0; k < 8; ++k) {
    const auto col = r.scores.col(k);
    EXPECT_NEAR(col.mean(), 0.0, 1e-8);
    const double var = col.squaredNorm() / 59.0;
    EXPECT_NEAR(var / r.explained_variance[static_cast<std::size_t>(k)], 1.0, 1e-6);
    if (k > 0) EXPECT_LE(r.explained_variance[static_cast<std::size_t>(k)],
                         r.explained_variance[static_cast<std::size_t>(k - 1)]);
    Eigen::Index arg;
    r.loadings.col(k).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(r.loadings(arg, k), 0.0);
  }
  // Truncated values agree with the full decomposition of the same design.
  const auto want = oracle::covariance_eigenvalues(pca_design(m, opt.pre, false));
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(r.explained_variance[k], want[k], 1e-6 * want[0]);
}

TEST(Pca, DuplicateCellsShareScores) {
  auto rows = std::vector<std::vector<double>>{{1, 4, 1, 0}, {3, 0, 3, 2}, {0, 2, 0, 5}};
  const auto m = testing::from_rows<double>(rows);
  PcaOptions opt;
  opt.n_components = 2;
  const auto r = pca(m, opt);
  EXPECT_LE((r.scores.row(0) - r.scores.row(2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pca, Errors) {
  const auto constant = testing::from_rows<double>({{2, 2, 2}, {1, 1, 1}});
  PcaOptions opt;
  opt.n_components = 1;
  opt.pre = {false, false};
  EXPECT_THROW(pca(constant, opt), DomainError);
  opt.n_components = 3;
  EXPECT_THROW(pca(testing::from_rows<double>({{1, 2, 3}, {3, 1, 1}}), opt), DomainError);
}

TEST(Pca, Deterministic) {
  const auto m = to_real(testing::random_counts(50, 40, 0.5, 30, 8));
  PcaOptions opt;
  opt.n_components = 5;
  opt.seed = 4;
  EXPECT_EQ(pca(m, opt).scores, pca(m, opt).scores);
}

TEST(KMeans, KEqualsNIsZeroInertia) {
  MatrixXd x(5, 2);
  x << 0, 0, 1, 0, 0, 1, 5, 5, 2, 7;
  const auto r = kmeans(x, 5, 1);
  EXPECT_EQ(r.labels.n_clusters(), 5u);
  EXPECT_NEAR(r.inertia(), 0.0, 1e-12);
}

TEST(KMeans, TwoBlobs) {
  std::vector<int> truth;
  const auto pts = testing::two_blobs(50, 3, &truth);
  const auto r = kmeans(pts, 2, 7);
  EXPECT_EQ(adjusted_rand_index(r.labels, Partition(truth)), 1.0);
  EXPECT_TRUE(r.converged);
}

TEST(KMeans, MonotoneInertiaAndFixedPoint) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    MatrixXd x(120, 3);
    for (int i = 0; i < 120; ++i)
      for (int j = 0; j < 3; ++j) x(i, j) = n(rng) + (i % 4) * 1.5;
    const auto r = kmeans(x, 6, seed);
    for (std::size_t i = 1; i < r.inertia_history.size(); ++i)
      EXPECT_LE(r.inertia_history[i], r.inertia_history[i - 1] + 1e-9);
    ASSERT_TRUE(r.converged);
    EXPECT_EQ(assign_nearest(x, r.centroids), r.labels.labels());
    EXPECT_NEAR(inertia(x, r.centroids, r.labels.labels()), r.inertia(), 1e-9);
    EXPECT_EQ(kmeans(x, 6, seed, 300, 8).labels, r.labels);
  }
}

TEST(KMeans, DuplicatePointsStillFillAllClusters) {
  MatrixXd x = MatrixXd::Zero(10, 2);
  x(9, 0) = 1.0;
  x(8, 1) = 1.0;
  const auto r = kmeans(x, 3, 2);
  EXPECT_EQ(r.labels.n_clusters(), 3u);
}

TEST(Ward, SingletonsWhenKEqualsN) {
  const auto pts = testing::two_blobs(4, 1);
  const auto p = hclust_ward(pts, 8);
  EXPECT_EQ(p.n_clusters(), 8u);
  EXPECT_THROW(hclust_ward(pts, 9), DomainError);
  EXPECT_THROW(hclust_ward(pts, 0), DomainError);
}

TEST(Ward, MatchesBruteForce) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = 2 + trial % 9, dims = 1 + trial % 3;
    MatrixXd x(rows, dims);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < dims; ++j) x(i, j) = n(rng);
    const auto got = ward_linkage(x);
    const auto want = oracle::ward(x);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t s = 0; s < got.size(); ++s) {
      EXPECT_EQ(got[s].a, want[s].a) << "trial " << trial << " step " << s;
      EXPECT_EQ(got[s].b, want[s].b) << "trial " << trial << " step " << s;
      EXPECT_EQ(got[s].size, want[s].size);
      EXPECT_NEAR(got[s].height, want[s].cost, 1e-9 * std::max(1.0, want[s].cost));
    }
  }
}

TEST(Ward, TiesBreakBySmallestPair) {
  // Integer grid: many equal costs; both sides break ties lexicographically.
  MatrixXd x(8, 2);
  x << 0, 0, 1, 0, 0, 1, 1, 1, 10, 0, 11, 0, 10, 1, 11, 1;
  const auto got = ward_linkage(x);
  const auto want = oracle::ward(x);
  for (std::size_t s = 0; s < got.size(); ++s) {
    EXPECT_EQ(got[s].a, want[s].a);
    EXPECT_EQ(got[s].b, want[s].b);
  }
  EXPECT_EQ(got[0].a, 0u);
  EXPECT_EQ(got[0].b, 1u);
}

TEST(Ward, HeightsNonDecreasingAndBlobsRecovered) {
  std::vector<int> truth;
  const auto pts = testing::two_blobs(30, 5, &truth);
  const auto merges = ward_linkage(pts);
  for (std::size_t i = 1; i < merges.size(); ++i)
    EXPECT_GE(merges[i].height, merges[i - 1].height - 1e-12);
  EXPECT_EQ(adjusted_rand_index(hclust_ward(pts, 2), Partition(truth)), 1.0);
  EXPECT_EQ(cut_tree(60, merges, 1).n_clusters(), 1u);
}

TEST(Pipeline, SpecValidation) {
  ClusteringSpec spec;
  EXPECT_NO_THROW(spec.validate(100, 50));
  spec.k = 51;
  EXPECT_THROW(spec.validate(100, 50), DomainError);
  spec.k = 0;
  EXPECT_THROW(spec.validate(100, 50), DomainError);
  spec = {};
  spec.n_pcs = 11;
  EXPECT_THROW(spec.validate(10, 50), DomainError);
  EXPECT_EQ(parse_cluster_method("hclust-ward-pc"), ClusterMethod::HclustWardPc);
  EXPECT_EQ(to_string(ClusterMethod::KMeans), "kmeans");
  EXPECT_THROW(parse_cluster_method("louvain"), DomainError);
}

TEST(Pipeline, RecoversSyntheticAndIsDeterministic) {
  const auto d = simulate_synthetic({});
  const auto m = to_real(d.counts);
  ClusteringSpec spec;
  spec.k = 3;
  spec.seed = 5;
  const auto a = cluster_pipeline(m, spec);
  EXPECT_GT(adjusted_rand_index(a.labels, d.labels), 0.9);
  EXPECT_EQ(cluster_pipeline(m, spec, 8).labels, a.labels);

  spec.method = ClusterMethod::HclustWardPc;
  EXPECT_GT(adjusted_rand_index(cluster_pipeline(m, spec).labels, d.labels), 0.9);

  spec.k = 1;
  const auto one = cluster_pipeline(m, spec);
  EXPECT_EQ(one.labels.n_clusters(), 1u);
  // One cluster against the three planted ones: no pair agreement beyond chance.
  EXPECT_EQ(adjusted_rand_index(one.labels, d.labels), 0.0);
  EXPECT_EQ(adjusted_rand_index(one.labels, one.labels), 1.0);
}

TEST(Pipeline, PaperDefaultsGiveNineClusters) {
  const auto d = simulate_synthetic({});
  ClusteringSpec spec;
  spec.method = ClusterMethod::HclustWardPc;
  spec.seed = 1;
  const auto r = cluster_pipeline(to_real(d.counts), spec);
  EXPECT_EQ(r.labels.n_clusters(), 9u);
  EXPECT_EQ(r.spec.n_pcs, 10u);
}

TEST(Pipeline, InvariantToCellOrder) {
  SyntheticConfig cfg;
  cfg.n_cells = 120;
  cfg.n_genes = 80;
  const auto d = simulate_synthetic(cfg);
  std::vector<std::size_t> genes(80), cells(120);
  std::iota(genes.begin(), genes.end(), 0u);
  std::iota(cells.begin(), cells.end(), 0u);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 3; ++t) {
    std::shuffle(cells.begin(), cells.end(), rng);
    const auto shuffled = to_real(subset(d.counts, genes, cells));
    for (auto method : {ClusterMethod::KMeans, ClusterMethod::HclustWardPc}) {
      ClusteringSpec spec;
      spec.method = method;
      spec.k = 3;
      spec.seed = 2;
      const auto base = cluster_pipeline(to_real(d.counts), spec).labels;
      const auto moved = cluster_pipeline(shuffled, spec).labels;
      std::vector<int> back(120);
      for (std::size_t i = 0; i < 120; ++i) back[cells[i]] = moved[i];
      EXPECT_EQ(adjusted_rand_index(base, Partition::from_any(back)), 1.0);
    }
  }
}

}  // namespace
}  // namespace scbench
