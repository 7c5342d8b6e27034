#pragma once

#include <span>
#include <vector>

#include "scbench/matrix.hpp"

namespace scbench {

/// Per-gene statistics across cells. `sd` is the population standard deviation.
struct GeneSummary {
  std::vector<double> mean;
  std::vector<double> sd;
  std::vector<double> zero_fraction;
};

/// Per-cell library sizes (column sums).
struct CellSummary {
  std::vector<double> library_size;
};

template <typename T>
GeneSummary gene_summary(const SparseMatrix<T>& m);

template <typename T>
CellSummary cell_summary(const SparseMatrix<T>& m);

/// Rows and columns picked in the given order; ids carried over.
/// Throws DomainError for out-of-range or repeated indices.
template <typename T>
SparseMatrix<T> subset(const SparseMatrix<T>& m, std::span<const std::size_t> genes,
                       std::span<const std::size_t> cells);

/// Preprocessing applied before correlation and clustering.
struct Preprocess {
  bool normalize = true;  ///< scale columns to the median nonzero library size
  bool log = true;        ///< ln(1 + v)
};

/// Median-library-size scaling followed by optional log1p.
///
/// Each column is multiplied by median / library_size, the median taken over
/// cells with nonzero library size. All-zero columns stay all-zero.
template <typename T>
RealMatrix normalize_and_log(const SparseMatrix<T>& m, bool do_log);

/// Applies `pre` (either step may be off).
template <typename T>
RealMatrix preprocess(const SparseMatrix<T>& m, const Preprocess& pre);

/// Median of a sequence; mean of the two middle values for even sizes.
double median(std::vector<double> values);

}  // namespace scbench
