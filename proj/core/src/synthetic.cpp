#include "scbench/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "scbench/parallel.hpp"
#include "scbench/random.hpp"

namespace scbench {

void SyntheticConfig::validate() const {
  if (n_genes == 0 || n_cells == 0) throw DomainError("synthetic matrix must be nonempty");
  if (n_clusters == 0) throw DomainError("n_clusters must be >= 1");
  if (n_clusters > n_cells) throw DomainError("n_clusters must not exceed n_cells");
  if (!(cluster_separation > 0) || !std::isfinite(cluster_separation))
    throw DomainError("cluster_separation must be positive");
  if (!(base_mean > 0) || !std::isfinite(base_mean))
    throw DomainError("base_mean must be positive");
}

SyntheticData simulate_synthetic(const SyntheticConfig& cfg, unsigned workers) {
  cfg.validate();
  const std::size_t k = cfg.n_clusters;

  std::vector<int> labels(cfg.n_cells);
  for (std::size_t c = 0; c < cfg.n_cells; ++c) labels[c] = static_cast<int>(c % k);

  SyntheticData out;
  out.markers_per_cluster =
      std::max<std::size_t>(1, std::min(cfg.n_genes / 10, cfg.n_genes / k));
  out.profile.resize(cfg.n_genes * k);
  for (std::size_t g = 0; g < cfg.n_genes; ++g) {
    auto rng = substream(cfg.seed, Stream::SyntheticProfile, g);
    std::normal_distribution<double> z(0.0, kProfileLogSd);
    const double baseline = cfg.base_mean * std::exp(z(rng));
    const std::size_t owner = g / out.markers_per_cluster;
    for (std::size_t j = 0; j < k; ++j)
      out.profile[g * k + j] = baseline * (owner == j ? cfg.cluster_separation : 1.0);
  }

  std::vector<std::vector<Entry<Count>>> columns(cfg.n_cells);
  parallel_for(cfg.n_cells, workers, [&](std::size_t c) {
    auto rng = substream(cfg.seed, Stream::SyntheticCounts, c);
    const auto cluster = static_cast<std::size_t>(labels[c]);
    auto& col = columns[c];
    for (std::size_t g = 0; g < cfg.n_genes; ++g) {
      std::poisson_distribution<long long> draw(out.profile[g * k + cluster]);
      const auto v = draw(rng);
      if (v > 0) col.push_back({static_cast<Index>(g), static_cast<Count>(v)});
    }
  });

  MatrixBuilder<Count> builder(cfg.n_genes);
  for (const auto& col : columns) builder.push_column(col);
  out.counts = std::move(builder).build();
  out.labels = Partition(std::move(labels));
  return out;
}

}  // namespace scbench
