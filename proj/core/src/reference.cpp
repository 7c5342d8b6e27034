#include "scbench/reference.hpp"

#include <cmath>
#include <numeric>

#include "scbench/summary.hpp"

namespace scbench {

void ReferenceFilterConfig::validate() const {
  if (!std::isfinite(min_gene_mean) || min_gene_mean < 0)
    throw DomainError("min_gene_mean must be finite and >= 0");
  if (!std::isfinite(min_gene_nonzero_fraction) || min_gene_nonzero_fraction < 0 ||
      min_gene_nonzero_fraction > 1)
    throw DomainError("min_gene_nonzero_fraction must lie in [0, 1]");
}

ReferenceResult build_reference(const CountMatrix& counts, const ReferenceFilterConfig& cfg) {
  cfg.validate();
  if (counts.n_genes() == 0 || counts.n_cells() == 0)
    throw DomainError("cannot build a reference from an empty matrix");

  const auto libs = cell_summary(counts).library_size;
  std::vector<std::size_t> cells;
  for (std::size_t c = 0; c < counts.n_cells(); ++c)
    if (libs[c] >= static_cast<double>(cfg.min_cell_library_size)) cells.push_back(c);
  if (cells.empty())
    throw EmptyReferenceError("min_cell_library_size",
                              "empty reference: no cell reaches min_cell_library_size = " +
                                  std::to_string(cfg.min_cell_library_size));

  std::vector<std::size_t> all_genes(counts.n_genes());
  std::iota(all_genes.begin(), all_genes.end(), std::size_t{0});
  const auto kept_cells = subset(counts, all_genes, cells);
  const auto stats = gene_summary(kept_cells);

  std::vector<std::size_t> nonzero(counts.n_genes(), 0);
  for (Index r : kept_cells.row_indices()) ++nonzero[r];
  const double n_kept = static_cast<double>(cells.size());

  std::vector<std::size_t> genes;
  bool any_mean_ok = false;
  for (std::size_t g = 0; g < counts.n_genes(); ++g) {
    const bool mean_ok = stats.mean[g] >= cfg.min_gene_mean;
    const bool nz_ok = static_cast<double>(nonzero[g]) / n_kept >= cfg.min_gene_nonzero_fraction;
    any_mean_ok = any_mean_ok || mean_ok;
    if (mean_ok && nz_ok) genes.push_back(g);
  }
  if (genes.empty()) {
    const std::string binding = any_mean_ok ? "min_gene_nonzero_fraction" : "min_gene_mean";
    throw EmptyReferenceError(
        binding, "empty reference: no gene passes " + binding + " on the " +
                     std::to_string(cells.size()) + " surviving cells");
  }

  std::vector<std::size_t> kept_all(cells.size());
  std::iota(kept_all.begin(), kept_all.end(), std::size_t{0});
  ReferenceResult out{subset(kept_cells, genes, kept_all), {}};
  out.report.cells_kept = cells.size();
  out.report.cells_dropped = counts.n_cells() - cells.size();
  out.report.genes_kept = genes.size();
  out.report.genes_dropped = counts.n_genes() - genes.size();
  out.report.thresholds = cfg;
  return out;
}

}  // namespace scbench
