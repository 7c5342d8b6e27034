#pragma once

#include <optional>
#include <string>

#include "scbench/correlation.hpp"
#include "scbench/partition.hpp"

namespace scbench {

struct EvalOptions {
  Preprocess pre{};
  bool correlation_matrices = true;
  unsigned workers = 1;
};

/// Evaluation of one recovered (or observed) matrix against the reference.
struct MetricsReport {
  std::string method;
  CorrelationVector gene_correlations;
  CorrelationVector cell_correlations;
  Quantiles gene_summary;
  Quantiles cell_summary;
  std::optional<double> cmd_gene;
  std::optional<double> cmd_cell;
  std::optional<double> ari;
  std::optional<double> jaccard;
};

/// Reference-side quantities shared by every method of one evaluation.
struct ReferenceContext {
  RealMatrix reference;
  std::optional<CorrelationMatrix> gene_corr;
  std::optional<CorrelationMatrix> cell_corr;
  std::optional<Partition> labels;
};

ReferenceContext make_reference_context(RealMatrix reference, std::optional<Partition> labels,
                                        const EvalOptions& options);

/// Throws DomainError when `recovered` and the reference differ in shape.
MetricsReport evaluate_method(const std::string& method, const RealMatrix& recovered,
                              const ReferenceContext& ref,
                              const std::optional<Partition>& method_labels,
                              const EvalOptions& options);

}  // namespace scbench
