#pragma once

#include <cstdint>
#include <string>

#include "scbench/partition.hpp"
#include "scbench/pca.hpp"
#include "scbench/summary.hpp"

namespace scbench {

enum class ClusterMethod {
  KMeans,        ///< k-means on the top principal components
  HclustWardPc,  ///< Ward hierarchical clustering on the top principal components
};

std::string to_string(ClusterMethod method);
ClusterMethod parse_cluster_method(const std::string& name);

struct ClusteringSpec {
  ClusterMethod method = ClusterMethod::KMeans;
  std::size_t k = 9;
  std::size_t n_pcs = 10;
  std::uint64_t seed = 0;
  Preprocess pre{};
  bool scale_genes = false;

  /// Throws DomainError unless 1 <= k <= n_cells and 1 <= n_pcs <= min(n_genes, n_cells).
  void validate(std::size_t n_genes, std::size_t n_cells) const;
};

struct ClusteringResult {
  Partition labels;
  ClusteringSpec spec;
  PcaResult pca;
};

/// Preprocess -> PCA(n_pcs) -> k-means or Ward on the scores.
ClusteringResult cluster_pipeline(const RealMatrix& m, const ClusteringSpec& spec,
                                  unsigned workers = 1);

}  // namespace scbench
