#pragma once

#include <vector>

#include <Eigen/Dense>

#include "scbench/partition.hpp"

namespace scbench {

/// One agglomeration step. Clusters are named by their smallest member index,
/// so `a < b` and the merged cluster keeps the name `a`.
struct Merge {
  std::size_t a = 0;
  std::size_t b = 0;
  /// Ward merge cost: increase in the within-cluster sum of squares.
  double height = 0.0;
  std::size_t size = 0;  ///< size of the merged cluster
};

/// Full Ward agglomeration of the rows of `points` (n - 1 merges).
///
/// Lance-Williams updates on squared Euclidean distances over a condensed
/// distance matrix with cached nearest neighbours. Among equal-cost pairs the
/// lexicographically smallest (a, b) merges first.
std::vector<Merge> ward_linkage(const Eigen::MatrixXd& points);

/// Partition after applying the first n - k merges. Labels follow the order in
/// which clusters first appear along the point index.
Partition cut_tree(std::size_t n_points, const std::vector<Merge>& merges, std::size_t k);

/// ward_linkage followed by cut_tree. Throws DomainError unless 1 <= k <= n.
Partition hclust_ward(const Eigen::MatrixXd& points, std::size_t k);

}  // namespace scbench
