#pragma once

#include <optional>
#include <span>
#include <vector>

#include "scbench/matrix.hpp"
#include "scbench/summary.hpp"

namespace scbench {

enum class Axis { Gene, Cell };

/// Pearson product-moment correlation; nullopt when either vector is constant.
/// Throws DomainError on length mismatch or fewer than two points.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Coefficient of determination of the OLS fit of x on y (with intercept).
/// nullopt when y is constant; 0 when x is constant.
std::optional<double> r_squared(std::span<const double> x, std::span<const double> y);

/// Per-gene or per-cell correlations between two equally shaped matrices.
struct CorrelationVector {
  std::vector<std::optional<double>> values;
  std::size_t n_undefined = 0;

  /// Defined entries in index order.
  std::vector<double> defined() const;
};

/// Preprocesses both matrices with `pre`, then correlates `a` (recovered or
/// observed) with `b` (reference) row by row (Axis::Gene) or column by column.
CorrelationVector matrix_correlations(const RealMatrix& a, const RealMatrix& b, Axis axis,
                                      const Preprocess& pre, unsigned workers = 1);

/// Dense symmetric Pearson correlation matrix among genes or cells.
/// Constant vectors are masked invalid; their rows and columns hold 0.
struct CorrelationMatrix {
  std::size_t n = 0;
  std::vector<double> values;  // row-major n x n
  std::vector<bool> valid;

  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  std::size_t n_valid() const;
};

/// Throws DomainError when fewer than two valid vectors remain.
CorrelationMatrix correlation_matrix(const RealMatrix& m, Axis axis, const Preprocess& pre,
                                     unsigned workers = 1);

/// Correlation matrix distance 1 - tr(R1 R2) / (|R1|_F |R2|_F) on the common
/// valid indices. Throws DomainError on size mismatch or < 2 common indices.
double correlation_matrix_distance(const CorrelationMatrix& r1, const CorrelationMatrix& r2);

/// Distribution summary of a set of values (linear-interpolated quantiles).
struct Quantiles {
  std::size_t count = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

Quantiles summarize(std::vector<double> values);

}  // namespace scbench
