#include "scbench/pipeline.hpp"

#include <algorithm>

#include "scbench/hclust.hpp"
#include "scbench/kmeans.hpp"

namespace scbench {

std::string to_string(ClusterMethod method) {
  return method == ClusterMethod::KMeans ? "kmeans" : "hclust-ward-pc";
}

ClusterMethod parse_cluster_method(const std::string& name) {
  if (name == "kmeans") return ClusterMethod::KMeans;
  if (name == "hclust-ward-pc") return ClusterMethod::HclustWardPc;
  throw DomainError("unknown clustering method '" + name + "'");
}

void ClusteringSpec::validate(std::size_t n_genes, std::size_t n_cells) const {
  if (k < 1 || k > n_cells)
    throw DomainError("k = " + std::to_string(k) + " must lie in [1, n_cells = " +
                      std::to_string(n_cells) + "]");
  const std::size_t limit = std::min(n_genes, n_cells);
  if (n_pcs < 1 || n_pcs > limit)
    throw DomainError("n_pcs = " + std::to_string(n_pcs) + " must lie in [1, " +
                      std::to_string(limit) + "]");
}

ClusteringResult cluster_pipeline(const RealMatrix& m, const ClusteringSpec& spec,
                                  unsigned workers) {
  spec.validate(m.n_genes(), m.n_cells());
  PcaOptions opts;
  opts.n_components = spec.n_pcs;
  opts.pre = spec.pre;
  opts.scale_genes = spec.scale_genes;
  opts.seed = spec.seed;

  ClusteringResult out;
  out.spec = spec;
  out.pca = pca(m, opts);
  if (spec.method == ClusterMethod::KMeans)
    out.labels = kmeans(out.pca.scores, spec.k, spec.seed, 300, workers).labels;
  else
    out.labels = hclust_ward(out.pca.scores, spec.k);
  return out;
}

}  // namespace scbench
