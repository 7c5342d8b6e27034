#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scbench/matrix.hpp"

namespace scbench {

enum class DownsampleMode { Basic, Amended };

std::string to_string(DownsampleMode mode);
DownsampleMode parse_downsample_mode(const std::string& name);

/// Sequencing-efficiency model: tau_c ~ Gamma(mean = mean_efficiency, cv = efficiency_cv).
struct DownsampleConfig {
  double mean_efficiency = 0.05;
  double efficiency_cv = 0.3;
  std::uint64_t seed = 0;
  DownsampleMode mode = DownsampleMode::Basic;

  void validate() const;

  double gamma_shape() const { return 1.0 / (efficiency_cv * efficiency_cv); }
  double gamma_scale() const { return mean_efficiency * efficiency_cv * efficiency_cv; }

  /// P(tau > 1) under the unclamped Gamma.
  double tail_mass_above_one() const;
  /// Tail mass above this triggers a warning.
  static constexpr double kTailWarning = 1e-6;
};

/// Per-cell efficiencies in (0, 1].
struct EfficiencyVector {
  std::vector<double> tau;
  /// Draws above 1 (or underflowing to 0) that were clamped into (0, 1].
  std::size_t clamp_events = 0;
};

EfficiencyVector sample_efficiencies(std::size_t n_cells, const DownsampleConfig& cfg,
                                     unsigned workers = 1);

/// Y_gc ~ Poisson(tau_c * lambda_gc), one random substream per cell.
/// Entries with lambda_gc == 0 stay exactly zero. Output ids follow `ref`.
template <typename T>
CountMatrix poisson_downsample(const SparseMatrix<T>& ref, std::span<const double> tau,
                               std::uint64_t seed, unsigned workers = 1);

/// Per-gene mean and per-cell library-size targets for marginal matching.
struct MarginalTargets {
  std::vector<double> gene_means;
  std::vector<double> library_sizes;
  /// Global factor applied to the raw library sizes for consistency.
  double library_rescale = 1.0;
  /// Original-matrix indices the targets were taken from (sampled order).
  std::vector<std::size_t> gene_indices;
  std::vector<std::size_t> cell_indices;

  /// |sum(gene_means) * n_cells - sum(library_sizes)| relative to the mass.
  double consistency_error() const;
};

/// Samples genes and cells of `original` uniformly without replacement and
/// takes the sampled genes' means (over all original cells) and the sampled
/// cells' library sizes (over all original genes), rescaling the library sizes
/// by one global constant so both marginals carry the same total mass.
MarginalTargets draw_targets(const CountMatrix& original, std::size_t n_genes,
                             std::size_t n_cells, std::uint64_t seed);

/// Reassigns targets so the k-th smallest target lands on the reference gene
/// (cell) with the k-th smallest mean (library size); ties by index.
MarginalTargets align_targets_by_rank(const MarginalTargets& targets, const RealMatrix& ref);

struct IpfOptions {
  double tol = 1e-6;
  std::size_t max_iter = 200;
  unsigned workers = 1;
};

/// Reference rescaled as alpha_g * beta_c * lambda_gc.
struct ScaledReference {
  std::vector<double> row_factors;
  std::vector<double> col_factors;
  RealMatrix base;
  std::size_t iterations = 0;
  bool converged = false;
  double max_row_error = 0.0;
  double max_col_error = 0.0;
  /// Max relative marginal error after each full sweep (non-increasing).
  std::vector<double> error_history;

  double max_marginal_error() const { return std::max(max_row_error, max_col_error); }
  double value(std::size_t g, std::size_t c) const {
    return row_factors[g] * col_factors[c] * base.at(g, c);
  }
  RealMatrix materialize() const;
};

/// Iterative proportional fitting of row means and column sums.
///
/// Alternates alpha_g <- target_row_sum_g / current_row_sum_g and
/// beta_c <- target_col_sum_c / current_col_sum_c until the largest relative
/// marginal error is <= tol or max_iter sweeps have run. Zero targets get a
/// zero factor. Unreachable targets (structural zeros) never throw; they show
/// up as residual error with converged == false.
ScaledReference match_marginals(const RealMatrix& ref, const MarginalTargets& targets,
                                const IpfOptions& options = {});

struct AmendedResult {
  CountMatrix observed;
  ScaledReference scaled;
  MarginalTargets targets;
};

/// draw_targets -> rank alignment -> match_marginals -> Poisson with tau == 1.
AmendedResult amended_downsample(const RealMatrix& ref, const CountMatrix& original,
                                 const DownsampleConfig& cfg, const IpfOptions& options = {});

}  // namespace scbench
