#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "scbench/matrix.hpp"
#include "scbench/summary.hpp"

namespace scbench {

struct PcaOptions {
  std::size_t n_components = 10;
  Preprocess pre{};
  /// Scale each gene to unit variance after centering.
  bool scale_genes = false;
  std::uint64_t seed = 0;
  /// Extra subspace dimensions carried by the randomized iteration.
  std::size_t oversample = 10;
  std::size_t max_iter = 100;
  /// Relative change in the leading singular values that stops iteration.
  double tol = 1e-12;
};

struct PcaResult {
  Eigen::MatrixXd scores;    ///< cells x k
  Eigen::MatrixXd loadings;  ///< genes x k, orthonormal columns
  /// Score variances (n_cells - 1 denominator), non-increasing.
  std::vector<double> explained_variance;
  std::size_t iterations = 0;
};

/// Cells-as-points design matrix after preprocessing, gene centering and
/// optional scaling (cells x genes). Throws DomainError when every gene is
/// constant.
Eigen::MatrixXd pca_design(const RealMatrix& m, const Preprocess& pre, bool scale_genes);

/// Top-k principal components by randomized subspace iteration with
/// Rayleigh-Ritz extraction. Deterministic given the seed. Each component is
/// signed so its largest-magnitude loading is positive.
PcaResult pca(const RealMatrix& m, const PcaOptions& options);

/// Same, on an already centered cells x features matrix.
PcaResult pca_centered(const Eigen::MatrixXd& x, const PcaOptions& options);

}  // namespace scbench
