#include "scbench/evaluation.hpp"

#include "scbench/agreement.hpp"

namespace scbench {

ReferenceContext make_reference_context(RealMatrix reference, std::optional<Partition> labels,
                                        const EvalOptions& options) {
  ReferenceContext ctx;
  if (labels && labels->size() != reference.n_cells())
    throw DomainError("reference labels cover " + std::to_string(labels->size()) +
                      " cells, matrix has " + std::to_string(reference.n_cells()));
  if (options.correlation_matrices) {
    ctx.gene_corr = correlation_matrix(reference, Axis::Gene, options.pre, options.workers);
    ctx.cell_corr = correlation_matrix(reference, Axis::Cell, options.pre, options.workers);
  }
  ctx.reference = std::move(reference);
  ctx.labels = std::move(labels);
  return ctx;
}

MetricsReport evaluate_method(const std::string& method, const RealMatrix& recovered,
                              const ReferenceContext& ref,
                              const std::optional<Partition>& method_labels,
                              const EvalOptions& options) {
  MetricsReport out;
  out.method = method;
  out.gene_correlations =
      matrix_correlations(recovered, ref.reference, Axis::Gene, options.pre, options.workers);
  out.cell_correlations =
      matrix_correlations(recovered, ref.reference, Axis::Cell, options.pre, options.workers);
  out.gene_summary = summarize(out.gene_correlations.defined());
  out.cell_summary = summarize(out.cell_correlations.defined());

  if (ref.gene_corr) {
    try {
      out.cmd_gene = correlation_matrix_distance(
          correlation_matrix(recovered, Axis::Gene, options.pre, options.workers), *ref.gene_corr);
    } catch (const DomainError&) {
      out.cmd_gene.reset();
    }
  }
  if (ref.cell_corr) {
    try {
      out.cmd_cell = correlation_matrix_distance(
          correlation_matrix(recovered, Axis::Cell, options.pre, options.workers), *ref.cell_corr);
    } catch (const DomainError&) {
      out.cmd_cell.reset();
    }
  }
  if (ref.labels && method_labels) {
    out.ari = adjusted_rand_index(*method_labels, *ref.labels);
    out.jaccard = jaccard_pairs(*method_labels, *ref.labels);
  }
  return out;
}

}  // namespace scbench
