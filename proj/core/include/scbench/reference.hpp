#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "scbench/matrix.hpp"

namespace scbench {

/// Quality thresholds that select "high quality cells and highly expressed
/// genes". Cells are filtered first; gene statistics use surviving cells only.
struct ReferenceFilterConfig {
  std::uint64_t min_cell_library_size = 1000;
  double min_gene_mean = 0.5;
  double min_gene_nonzero_fraction = 0.25;

  void validate() const;
};

struct FilterReport {
  std::size_t cells_kept = 0;
  std::size_t cells_dropped = 0;
  std::size_t genes_kept = 0;
  std::size_t genes_dropped = 0;
  ReferenceFilterConfig thresholds;
};

/// Raised when a filter leaves no cells or no genes.
class EmptyReferenceError : public std::runtime_error {
 public:
  EmptyReferenceError(const std::string& threshold, const std::string& what)
      : std::runtime_error(what), threshold_(threshold) {}

  /// Name of the threshold that removed the last cell or gene.
  const std::string& threshold() const noexcept { return threshold_; }

 private:
  std::string threshold_;
};

struct ReferenceResult {
  CountMatrix reference;
  FilterReport report;
};

ReferenceResult build_reference(const CountMatrix& counts, const ReferenceFilterConfig& cfg);

}  // namespace scbench
