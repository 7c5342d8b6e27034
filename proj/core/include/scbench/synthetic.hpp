#pragma once

#include <cstdint>
#include <vector>

#include "scbench/matrix.hpp"
#include "scbench/partition.hpp"

namespace scbench {

struct SyntheticConfig {
  std::size_t n_genes = 200;
  std::size_t n_cells = 300;
  std::size_t n_clusters = 3;
  double cluster_separation = 4.0;
  double base_mean = 2.0;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Log-sd of the per-gene baseline profile around base_mean.
inline constexpr double kProfileLogSd = 0.5;

struct SyntheticData {
  CountMatrix counts;
  Partition labels;
  /// Planted Poisson means, genes x clusters, row-major.
  std::vector<double> profile;
  /// Marker genes of cluster k are [k * markers_per_cluster, (k+1) * markers_per_cluster).
  std::size_t markers_per_cluster = 0;

  double planted_mean(std::size_t gene, std::size_t cluster) const {
    return profile[gene * labels.n_clusters() + cluster];
  }
};

/// Cells go round-robin to clusters; each cluster up-scales its own block of
/// marker genes by cluster_separation over a shared log-normal baseline, and
/// counts are Poisson around the cluster profile. Deterministic in the seed
/// for any worker count.
SyntheticData simulate_synthetic(const SyntheticConfig& cfg, unsigned workers = 1);

}  // namespace scbench
