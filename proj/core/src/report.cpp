#include "scbench/report.hpp"

#include <fstream>

#include "scbench/error.hpp"

namespace scbench {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json to_json(const Preprocess& pre) {
  return Json{{"normalize", pre.normalize}, {"log1p", pre.log}};
}

Json to_json(const ReferenceFilterConfig& cfg) {
  return Json{{"min_cell_library_size", cfg.min_cell_library_size},
              {"min_gene_mean", cfg.min_gene_mean},
              {"min_gene_nonzero_fraction", cfg.min_gene_nonzero_fraction}};
}

Json to_json(const FilterReport& report) {
  return Json{{"cells_kept", report.cells_kept},
              {"cells_dropped", report.cells_dropped},
              {"genes_kept", report.genes_kept},
              {"genes_dropped", report.genes_dropped},
              {"thresholds", to_json(report.thresholds)}};
}

Json to_json(const SyntheticConfig& cfg) {
  return Json{{"n_genes", cfg.n_genes},
              {"n_cells", cfg.n_cells},
              {"n_clusters", cfg.n_clusters},
              {"cluster_separation", cfg.cluster_separation},
              {"base_mean", cfg.base_mean},
              {"seed", cfg.seed}};
}

Json to_json(const Quantiles& q) {
  return Json{{"count", q.count}, {"min", q.min},   {"q1", q.q1},    {"median", q.median},
              {"q3", q.q3},       {"max", q.max},   {"mean", q.mean}};
}

Json to_json(const ClusteringSpec& spec) {
  return Json{{"method", to_string(spec.method)},
              {"k", spec.k},
              {"n_pcs", spec.n_pcs},
              {"seed", spec.seed},
              {"preprocess", to_json(spec.pre)},
              {"scale_genes", spec.scale_genes}};
}

Json to_json(const MetricsReport& report) {
  return Json{{"method", report.method},
              {"gene_correlation", to_json(report.gene_summary)},
              {"gene_correlation_undefined", report.gene_correlations.n_undefined},
              {"cell_correlation", to_json(report.cell_summary)},
              {"cell_correlation_undefined", report.cell_correlations.n_undefined},
              {"cmd_gene", optional_number(report.cmd_gene)},
              {"cmd_cell", optional_number(report.cmd_cell)},
              {"ari", optional_number(report.ari)},
              {"jaccard_pairs", optional_number(report.jaccard)}};
}

Json downsample_provenance(const DownsampleConfig& cfg, const ScaledReference* ipf,
                           std::size_t clamp_events) {
  Json doc{{"mode", to_string(cfg.mode)},
           {"seed", cfg.seed},
           {"mean_efficiency", cfg.mean_efficiency},
           {"efficiency_cv", cfg.efficiency_cv}};
  if (ipf) {
    doc["ipf"] = Json{{"iterations", ipf->iterations},
                      {"converged", ipf->converged},
                      {"max_marginal_error", ipf->max_marginal_error()}};
  } else {
    doc["ipf"] = nullptr;
  }
  doc["clamp_events"] = clamp_events;
  return doc;
}

Json stats_summary_json(const StatsComparison& cmp) {
  return Json{{"genes", cmp.records.size()},
              {"values", cmp.preprocessed ? "preprocessed" : "raw"},
              {"r_mean", optional_number(cmp.r_mean)},
              {"r_sd", optional_number(cmp.r_sd)},
              {"r_zero_fraction", optional_number(cmp.r_zero_fraction)}};
}

void write_json(const Json& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

}  // namespace scbench
