#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "scbench/partition.hpp"

namespace scbench {

struct KMeansResult {
  Partition labels;
  Eigen::MatrixXd centroids;  ///< k x d
  /// Within-cluster sum of squares after every centroid update.
  std::vector<double> inertia_history;
  std::size_t iterations = 0;
  bool converged = false;

  double inertia() const { return inertia_history.empty() ? 0.0 : inertia_history.back(); }
};

/// Lloyd's algorithm on the rows of `points` with k-means++ seeding.
///
/// Stops at an assignment fixed point or after max_iter updates. A cluster
/// left empty is reseeded with the point farthest from its own centroid.
/// Assignment ties go to the lowest centroid index. The run is repeated
/// n_init times from independent seedings and the lowest final inertia wins
/// (earliest restart on ties), so the result depends only on the seed.
KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter = 300, unsigned workers = 1, std::size_t n_init = 10);

/// Index of the nearest centroid (lowest index on ties) for each row.
std::vector<int> assign_nearest(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                                unsigned workers = 1);

/// Sum of squared distances of each row to its assigned centroid.
double inertia(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
               const std::vector<int>& labels);

}  // namespace scbench
