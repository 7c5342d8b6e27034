#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "scbench/agreement.hpp"
#include "scbench/correlation.hpp"
#include "scbench/stats_comparison.hpp"

namespace scbench {
namespace {

using testing::from_rows;
using V = std::vector<double>;

TEST(Pearson, HandCases) {
  const V x{1, 2, 3, 4}, y{1, 3, 2, 4};
  EXPECT_DOUBLE_EQ(*pearson(x, x), 1.0);
  EXPECT_DOUBLE_EQ(*pearson(V{1, 2, 3}, V{3, 2, 1}), -1.0);
  EXPECT_NEAR(*pearson(x, y), 0.8, 1e-15);
  EXPECT_FALSE(pearson(x, V{2, 2, 2, 2}).has_value());
  EXPECT_FALSE(pearson(V{0, 0, 0}, V{1, 2, 3}).has_value());
  EXPECT_THROW(pearson(x, V{1, 2, 3}), DomainError);
  EXPECT_THROW(pearson(V{1}, V{1}), DomainError);
}

TEST(RSquared, HandCases) {
  const V x{1, 2, 3, 4}, y{1, 3, 2, 4};
  EXPECT_DOUBLE_EQ(*r_squared(x, x), 1.0);
  EXPECT_EQ(*r_squared(V{5, 5, 5, 5}, y), 0.0);
  EXPECT_NEAR(*r_squared(x, y), 0.64, 1e-12);
  EXPECT_FALSE(r_squared(x, V{3, 3, 3, 3}).has_value());
}

TEST(RSquared, EqualsPearsonSquared) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 1);
  for (int t = 0; t < 200; ++t) {
    V x(30), y(30);
    for (int i = 0; i < 30; ++i) {
      y[i] = n(rng);
      x[i] = 0.3 * t / 200.0 * y[i] + n(rng);
    }
    const double r = *pearson(x, y);
    EXPECT_NEAR(*r_squared(x, y), r * r, 1e-12);
  }
}

TEST(MatrixCorrelations, IdenticalMatricesAllOne) {
  const auto m = to_real(testing::random_counts(20, 30, 0.5, 20, 2));
  for (Axis axis : {Axis::Gene, Axis::Cell}) {
    const auto v = matrix_correlations(m, m, axis, {});
    for (const auto& e : v.values)
      if (e) EXPECT_NEAR(*e, 1.0, 1e-12);
  }
}

TEST(MatrixCorrelations, ConstantGeneUndefinedAndCounted) {
  const auto a = from_rows<double>({{1, 2, 3}, {4, 5, 7}});
  const auto b = from_rows<double>({{2, 2, 2}, {1, 5, 6}});
  const auto v = matrix_correlations(a, b, Axis::Gene, {false, false});
  EXPECT_FALSE(v.values[0].has_value());
  EXPECT_TRUE(v.values[1].has_value());
  EXPECT_EQ(v.n_undefined, 1u);
  EXPECT_EQ(v.defined().size(), 1u);
}

TEST(MatrixCorrelations, MatchesScalarPearsonExactly) {
  const auto a = testing::random_reals(20, 30, 0.6, 7);
  const auto b = testing::random_reals(20, 30, 0.6, 8);
  for (Preprocess pre : {Preprocess{}, Preprocess{false, false}}) {
    const auto pa = preprocess(a, pre);
    const auto pb = preprocess(b, pre);
    const auto genes = matrix_correlations(a, b, Axis::Gene, pre, 4);
    const auto cells = matrix_correlations(a, b, Axis::Cell, pre, 4);
    for (std::size_t g = 0; g < 20; ++g) {
      V x(30), y(30);
      for (std::size_t c = 0; c < 30; ++c) {
        x[c] = pa.at(g, c);
        y[c] = pb.at(g, c);
      }
      EXPECT_EQ(genes.values[g], pearson(x, y));
    }
    for (std::size_t c = 0; c < 30; ++c)
      EXPECT_EQ(cells.values[c], pearson(pa.dense_column(c), pb.dense_column(c)));
  }
  EXPECT_THROW(matrix_correlations(a, RealMatrix(20, 31), Axis::Gene, {}), DomainError);
}

TEST(CorrelationMatrix, Structure) {
  const auto dup = from_rows<double>({{1, 2, 4}, {1, 2, 4}, {3, 1, 2}});
  const auto r = correlation_matrix(dup, Axis::Gene, {false, false});
  EXPECT_NEAR(r(0, 1), 1.0, 1e-12);

  // Centered [1,-1,0] and [1,1,-2] are orthogonal; shift both to keep values positive.
  const auto orth = from_rows<double>({{4, 2, 3}, {4, 4, 1}});
  EXPECT_NEAR(correlation_matrix(orth, Axis::Gene, {false, false})(0, 1), 0.0, 1e-12);

  const auto m = testing::random_reals(10, 10, 0.8, 3);
  for (Axis axis : {Axis::Gene, Axis::Cell}) {
    const auto c = correlation_matrix(m, axis, {});
    for (std::size_t i = 0; i < c.n; ++i) {
      if (!c.valid[i]) continue;
      EXPECT_EQ(c(i, i), 1.0);
      for (std::size_t j = 0; j < c.n; ++j) {
        EXPECT_NEAR(c(i, j), c(j, i), 1e-12);
        EXPECT_LE(std::abs(c(i, j)), 1.0);
      }
    }
  }
}

TEST(CorrelationMatrix, AgreesWithPairwisePearson) {
  const auto m = testing::random_reals(12, 15, 0.7, 9);
  const auto c = correlation_matrix(m, Axis::Gene, {false, false});
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 12; ++j) {
      V x(15), y(15);
      for (std::size_t k = 0; k < 15; ++k) {
        x[k] = m.at(i, k);
        y[k] = m.at(j, k);
      }
      const auto p = pearson(x, y);
      if (p && c.valid[i] && c.valid[j]) EXPECT_NEAR(c(i, j), *p, 1e-12);
    }
  }
}

TEST(CorrelationMatrix, MasksConstantAndRejectsTooFew) {
  const auto m = from_rows<double>({{1, 1, 1}, {1, 2, 3}, {3, 1, 2}});
  const auto c = correlation_matrix(m, Axis::Gene, {false, false});
  EXPECT_FALSE(c.valid[0]);
  EXPECT_EQ(c.n_valid(), 2u);
  EXPECT_THROW(correlation_matrix(from_rows<double>({{1, 1, 1}, {1, 2, 3}}), Axis::Gene, {false, false}),
               DomainError);
}

CorrelationMatrix make_cm(std::size_t n, V values) {
  CorrelationMatrix c;
  c.n = n;
  c.values = std::move(values);
  c.valid.assign(n, true);
  return c;
}

TEST(Cmd, HandCasesAndBounds) {
  const auto eye = make_cm(2, {1, 0, 0, 1});
  const auto ones = make_cm(2, {1, 1, 1, 1});
  EXPECT_NEAR(correlation_matrix_distance(eye, ones), 1.0 - 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(correlation_matrix_distance(eye, ones), 0.29289, 1e-5);
  EXPECT_EQ(correlation_matrix_distance(ones, eye), correlation_matrix_distance(eye, ones));
  EXPECT_THROW(correlation_matrix_distance(eye, make_cm(3, V(9, 0.0))), DomainError);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = correlation_matrix(testing::random_reals(8, 12, 0.7, seed), Axis::Gene, {});
    const auto b = correlation_matrix(testing::random_reals(8, 12, 0.7, seed + 50), Axis::Gene, {});
    EXPECT_NEAR(correlation_matrix_distance(a, a), 0.0, 1e-12);
    const double d = correlation_matrix_distance(a, b);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
    EXPECT_EQ(d, correlation_matrix_distance(b, a));
  }
}

TEST(Cmd, UsesCommonValidIndices) {
  auto a = make_cm(3, {1, 0.5, 0, 0.5, 1, 0, 0, 0, 0});
  a.valid[2] = false;
  const auto b = make_cm(3, {1, 0.5, 0.9, 0.5, 1, 0.2, 0.9, 0.2, 1});
  EXPECT_NEAR(correlation_matrix_distance(a, b), 0.0, 1e-12);
  a.valid = {true, false, false};
  EXPECT_THROW(correlation_matrix_distance(a, b), DomainError);
}

TEST(Quantiles, LinearInterpolation) {
  const auto q = summarize({4, 1, 3, 2});
  EXPECT_EQ(q.count, 4u);
  EXPECT_EQ(q.min, 1);
  EXPECT_EQ(q.max, 4);
  EXPECT_DOUBLE_EQ(q.median, 2.5);
  EXPECT_DOUBLE_EQ(q.q1, 1.75);
  EXPECT_DOUBLE_EQ(q.q3, 3.25);
  EXPECT_DOUBLE_EQ(q.mean, 2.5);
  EXPECT_EQ(summarize({}).count, 0u);
}

Partition P(std::vector<int> v) { return Partition::from_any(v); }

TEST(Ari, HandCase) {
  EXPECT_EQ(adjusted_rand_index(P({0, 0, 1, 1}), P({0, 1, 0, 1})), -0.5);
  EXPECT_EQ(jaccard_pairs(P({0, 0, 1, 1}), P({0, 1, 0, 1})), 0.0);
}

TEST(Ari, IdenticalAndDegenerate) {
  EXPECT_EQ(adjusted_rand_index(P({2, 2, 0, 1, 1}), P({5, 5, 7, 9, 9})), 1.0);
  EXPECT_EQ(adjusted_rand_index(P({0, 0, 0}), P({0, 0, 0})), 1.0);
  EXPECT_EQ(adjusted_rand_index(P({0, 1, 2}), P({0, 1, 2})), 1.0);
  EXPECT_EQ(adjusted_rand_index(P({0, 0, 0}), P({0, 1, 2})), 0.0);
  EXPECT_EQ(jaccard_pairs(P({0, 1, 2}), P({2, 1, 0})), 1.0);
  EXPECT_THROW(adjusted_rand_index(P({0, 1}), P({0, 1, 0})), DomainError);
  EXPECT_THROW(jaccard_pairs(P({0}), P({0})), DomainError);
}

TEST(Ari, RandomLabelsCentredOnZero) {
  std::mt19937_64 rng(77);
  double sum = 0;
  for (int t = 0; t < 100; ++t)
    sum += adjusted_rand_index(testing::random_partition(200, 4, rng),
                               testing::random_partition(200, 4, rng));
  EXPECT_LE(std::abs(sum / 100), 0.05);
}

TEST(Agreement, MatchesPairEnumeration) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {2u, 3u, 10u, 57u, 200u}) {
    for (int k : {1, 2, 5, 12}) {
      const auto p = testing::random_partition(n, k, rng);
      const auto q = testing::random_partition(n, std::max(1, k - 1), rng);
      EXPECT_NEAR(jaccard_pairs(p, q), oracle::jaccard(p.labels(), q.labels()), 1e-12);
      const double want = oracle::ari(p.labels(), q.labels());
      if (std::isfinite(want)) EXPECT_NEAR(adjusted_rand_index(p, q), want, 1e-12);
      const auto counts = pair_counts(p, q);
      const auto pairs = oracle::enumerate_pairs(p.labels(), q.labels());
      EXPECT_EQ(static_cast<double>(counts.both), pairs.n11);
      EXPECT_EQ(static_cast<double>(counts.in_p), pairs.n11 + pairs.n10);
      EXPECT_EQ(static_cast<double>(counts.in_q), pairs.n11 + pairs.n01);
    }
  }
}

TEST(Agreement, SymmetricAndPermutationInvariant) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto p = testing::random_partition(80, 5, rng);
    const auto q = testing::random_partition(80, 3, rng);
    std::vector<int> perm(p.n_clusters());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> relabeled;
    for (int l : p.labels()) relabeled.push_back(perm[static_cast<std::size_t>(l)] + 10);
    const auto p2 = Partition::from_any(relabeled);
    EXPECT_EQ(adjusted_rand_index(p, q), adjusted_rand_index(q, p));
    EXPECT_EQ(jaccard_pairs(p, q), jaccard_pairs(q, p));
    EXPECT_EQ(adjusted_rand_index(p, q), adjusted_rand_index(p2, q));
    EXPECT_EQ(jaccard_pairs(p, q), jaccard_pairs(p2, q));
    EXPECT_EQ(adjusted_rand_index(p, p), 1.0);
    EXPECT_EQ(jaccard_pairs(p, p), 1.0);
    const double a = adjusted_rand_index(p, q);
    EXPECT_GE(a, -1.0);
    EXPECT_LE(a, 1.0);
  }
}

TEST(PartitionType, Validation) {
  EXPECT_THROW(Partition({0, 2}), DomainError);
  EXPECT_THROW(Partition({-1, 0}), DomainError);
  EXPECT_EQ(Partition({1, 0, 1}).n_clusters(), 2u);
  const std::vector<std::string> s{"b", "a", "b"};
  EXPECT_EQ(Partition::from_strings(s).labels(), (std::vector<int>{0, 1, 0}));
}

TEST(StatsComparison, SelfComparisonIsPerfect) {
  const auto m = to_real(testing::random_counts(40, 50, 0.4, 20, 4));
  const auto cmp = stats_comparison(m, m, matched_gene_ids(m, m));
  EXPECT_EQ(cmp.records.size(), 40u);
  EXPECT_DOUBLE_EQ(*cmp.r_mean, 1.0);
  EXPECT_DOUBLE_EQ(*cmp.r_sd, 1.0);
  EXPECT_DOUBLE_EQ(*cmp.r_zero_fraction, 1.0);
  EXPECT_FALSE(cmp.preprocessed);
}

TEST(StatsComparison, SingleGeneUndefinedCorrelations) {
  const auto m = to_real(testing::random_counts(5, 10, 0.5, 9, 4));
  const std::vector<std::string> one{"G3"};
  const auto cmp = stats_comparison(m, m, one);
  ASSERT_EQ(cmp.records.size(), 1u);
  EXPECT_EQ(cmp.records[0].gene_id, "G3");
  EXPECT_FALSE(cmp.r_mean.has_value());
  EXPECT_FALSE(cmp.r_sd.has_value());
}

TEST(StatsComparison, MatchesByIdAcrossOrders) {
  const auto a = from_rows<double>({{1, 2}, {3, 5}, {0, 7}}).with_ids({"x", "y", "z"}, {"c1", "c2"});
  const auto b = from_rows<double>({{0, 7}, {1, 2}}).with_ids({"z", "x"}, {"d1", "d2"});
  const auto ids = matched_gene_ids(a, b);
  EXPECT_EQ(ids, (std::vector<std::string>{"x", "z"}));
  const auto cmp = stats_comparison(a, b, ids);
  EXPECT_EQ(cmp.records[0].mean_orig, cmp.records[0].mean_other);
  EXPECT_EQ(cmp.records[1].zf_orig, 0.5);
  const std::vector<std::string> none;
  EXPECT_THROW(stats_comparison(a, b, none), DomainError);
  const std::vector<std::string> missing{"y"};
  EXPECT_THROW(stats_comparison(a, b, missing), DomainError);
}

TEST(MetricsPurity, RepeatedCallsBitIdentical) {
  const auto a = testing::random_reals(30, 40, 0.5, 1);
  const auto b = testing::random_reals(30, 40, 0.5, 2);
  const auto c1 = correlation_matrix(a, Axis::Cell, {}, 1);
  const auto c2 = correlation_matrix(a, Axis::Cell, {}, 8);
  EXPECT_EQ(c1.values, c2.values);
  EXPECT_EQ(matrix_correlations(a, b, Axis::Gene, {}, 1).values,
            matrix_correlations(a, b, Axis::Gene, {}, 8).values);
}

}  // namespace
}  // namespace scbench
