#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scbench/matrix.hpp"
#include "scbench/summary.hpp"

namespace scbench {

/// Paired per-gene statistics of an original and another dataset.
struct StatsRecord {
  std::string gene_id;
  double mean_orig = 0, mean_other = 0;
  double sd_orig = 0, sd_other = 0;
  double zf_orig = 0, zf_other = 0;
};

struct StatsComparison {
  std::vector<StatsRecord> records;
  /// Cross-gene Pearson r of each paired statistic; nullopt when undefined.
  std::optional<double> r_mean;
  std::optional<double> r_sd;
  std::optional<double> r_zero_fraction;
  /// Statistics computed on preprocessed rather than raw values.
  bool preprocessed = false;
};

/// Gene ids present in both matrices, in `a`'s order.
std::vector<std::string> matched_gene_ids(const RealMatrix& a, const RealMatrix& b);

/// Throws DomainError when `genes` is empty or names a gene missing from
/// either matrix. `pre`, when given, is applied to both matrices first.
StatsComparison stats_comparison(const RealMatrix& original, const RealMatrix& other,
                                 std::span<const std::string> genes,
                                 const std::optional<Preprocess>& pre = std::nullopt);

/// One row per gene: gene_id,mean_orig,mean_other,sd_orig,sd_other,zf_orig,zf_other.
void write_stats_csv(const StatsComparison& cmp, const std::filesystem::path& path);

/// Three scatter panels (mean, sd, zero fraction), original on x.
void write_stats_svg(const StatsComparison& cmp, const std::filesystem::path& path);

}  // namespace scbench
