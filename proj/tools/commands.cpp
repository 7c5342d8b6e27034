#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "scbench/csv.hpp"
#include "scbench/downsample.hpp"
#include "scbench/evaluation.hpp"
#include "scbench/matrix_io.hpp"
#include "scbench/pipeline.hpp"
#include "scbench/reference.hpp"
#include "scbench/report.hpp"
#include "scbench/stats_comparison.hpp"
#include "scbench/synthetic.hpp"

namespace scbench::cli {

namespace fs = std::filesystem;

namespace {

/// Raised for argument-level problems detected after CLI parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// `dir/name.ext` -> `dir/name<suffix>`
fs::path sibling(const fs::path& path, const std::string& suffix) {
  auto out = path;
  out.replace_extension();
  out += suffix;
  return out;
}

MatrixFormat output_format(const std::string& flag, const fs::path& path) {
  return flag.empty() ? format_from_path(path) : parse_format(flag);
}

AnyMatrix load(const fs::path& path, const std::string& format_flag) {
  return read_matrix(path, output_format(format_flag, path));
}

CountMatrix load_counts(const fs::path& path, const std::string& format_flag, const char* role) {
  auto m = load(path, format_flag);
  if (auto* counts = std::get_if<CountMatrix>(&m)) return std::move(*counts);
  throw DomainError(std::string(role) + " " + path.string() + " must hold integer counts");
}

/// Provenance skeleton; `parameters` mirrors the flags needed to re-run.
Json provenance(const std::string& command, const Json& parameters) {
  Json rerun = Json::array({command});
  for (const auto& [key, value] : parameters.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) rerun.push_back("--" + key);
      continue;
    }
    if (value.is_null()) continue;
    rerun.push_back("--" + key);
    rerun.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  return Json{{"schema_version", kSchemaVersion},
              {"tool", "scbench"},
              {"tool_version", kToolVersion},
              {"command", command},
              {"parameters", parameters},
              {"rerun_args", rerun}};
}

Json nullable_path(const std::string& p) { return p.empty() ? Json(nullptr) : Json(p); }

// ---------------------------------------------------------------------------
// build-ref

struct BuildRefArgs {
  std::string input, output, format, report, provenance;
  ReferenceFilterConfig cfg;
};

int build_ref(const BuildRefArgs& a, std::ostream& out, std::ostream& err) {
  const auto counts = load_counts(a.input, "", "input");
  ReferenceResult result;
  try {
    result = build_reference(counts, a.cfg);
  } catch (const EmptyReferenceError& e) {
    err << "error: " << e.what() << "\n  binding threshold: " << e.threshold()
        << "\n  thresholds: " << to_json(a.cfg).dump() << '\n';
    return kFailure;
  }
  write_matrix(result.reference, a.output, output_format(a.format, a.output));

  const fs::path report_path = a.report.empty() ? sibling(a.output, ".filter.json") : fs::path(a.report);
  Json report{{"schema_version", kSchemaVersion}};
  report.update(to_json(result.report));
  write_json(report, report_path);

  Json params{{"input", a.input},
              {"output", a.output},
              {"format", nullable_path(a.format)},
              {"min-cell-library-size", a.cfg.min_cell_library_size},
              {"min-gene-mean", a.cfg.min_gene_mean},
              {"min-gene-nonzero-fraction", a.cfg.min_gene_nonzero_fraction},
              {"report", report_path.string()}};
  auto prov = provenance("build-ref", params);
  prov["result"] = to_json(result.report);
  write_json(prov, a.provenance.empty() ? sibling(a.output, ".provenance.json") : fs::path(a.provenance));

  out << "reference: " << result.report.genes_kept << " genes x " << result.report.cells_kept
      << " cells (" << result.report.genes_dropped << " genes, " << result.report.cells_dropped
      << " cells dropped)\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// downsample

struct DownsampleArgs {
  std::string reference, original, output, format, provenance, mode = "basic";
  std::optional<double> efficiency;
  double cv = 0.3;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  std::size_t max_iter = 200;
  unsigned workers = 1;
};

int downsample(const DownsampleArgs& a, std::ostream& out, std::ostream& err) {
  DownsampleConfig cfg;
  cfg.mode = parse_downsample_mode(a.mode);
  cfg.seed = a.seed;
  cfg.efficiency_cv = a.cv;
  if (cfg.mode == DownsampleMode::Basic) {
    if (!a.efficiency) throw UsageError("--efficiency is required in basic mode");
    cfg.mean_efficiency = *a.efficiency;
  } else {
    if (a.original.empty()) throw UsageError("--original is required in amended mode");
    if (a.efficiency) cfg.mean_efficiency = *a.efficiency;
  }
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  const auto ref_any = load(a.reference, "");
  const RealMatrix ref = as_real(ref_any);
  Json params{{"reference", a.reference},
              {"original", nullable_path(a.original)},
              {"output", a.output},
              {"format", nullable_path(a.format)},
              {"mode", to_string(cfg.mode)},
              {"efficiency", a.efficiency ? Json(*a.efficiency) : Json(nullptr)},
              {"cv", cfg.efficiency_cv},
              {"seed", cfg.seed},
              {"tol", a.tol},
              {"max-iter", a.max_iter}};
  auto prov = provenance("downsample", params);

  CountMatrix observed;
  if (cfg.mode == DownsampleMode::Basic) {
    const double tail = cfg.tail_mass_above_one();
    if (tail > DownsampleConfig::kTailWarning)
      err << "warning: Gamma efficiency mass above 1 is " << tail
          << "; draws above 1 are clamped\n";
    const auto tau = sample_efficiencies(ref.n_cells(), cfg, a.workers);
    observed = poisson_downsample(ref, tau.tau, cfg.seed, a.workers);
    prov.update(downsample_provenance(cfg, nullptr, tau.clamp_events));
    prov["efficiency_tail_mass"] = tail;
  } else {
    const auto original = load_counts(a.original, "", "original");
    IpfOptions ipf{a.tol, a.max_iter, a.workers};
    auto result = amended_downsample(ref, original, cfg, ipf);
    if (!result.scaled.converged)
      err << "warning: marginal matching did not converge after " << result.scaled.iterations
          << " iterations (max relative error " << result.scaled.max_marginal_error() << ")\n";
    observed = std::move(result.observed);
    prov.update(downsample_provenance(cfg, &result.scaled, 0));
    prov["targets"] = Json{{"library_rescale", result.targets.library_rescale},
                           {"consistency_error", result.targets.consistency_error()}};
  }
  write_matrix(observed, a.output, output_format(a.format, a.output));
  write_json(prov, a.provenance.empty() ? sibling(a.output, ".provenance.json") : fs::path(a.provenance));

  std::uint64_t total = 0;
  for (Count v : observed.values()) total += v;
  out << "observed: " << observed.n_genes() << " x " << observed.n_cells() << ", total count "
      << total << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  SyntheticConfig cfg;
  bool have_seed = false;
  std::string output, labels, format, provenance;
  unsigned workers = 1;
};

int simulate(const SimulateArgs& a, std::ostream& out, std::ostream&) {
  try {
    a.cfg.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto data = simulate_synthetic(a.cfg, a.workers);
  write_matrix(data.counts, a.output, output_format(a.format, a.output));
  const fs::path labels = a.labels.empty() ? sibling(a.output, ".labels.csv") : fs::path(a.labels);
  write_labels_csv(labels, data.counts.cell_ids(), data.labels);

  Json params{{"genes", a.cfg.n_genes},
              {"cells", a.cfg.n_cells},
              {"clusters", a.cfg.n_clusters},
              {"separation", a.cfg.cluster_separation},
              {"base-mean", a.cfg.base_mean},
              {"seed", a.cfg.seed},
              {"output", a.output},
              {"labels", labels.string()},
              {"format", nullable_path(a.format)}};
  auto prov = provenance("simulate", params);
  prov["config"] = to_json(a.cfg);
  prov["markers_per_cluster"] = data.markers_per_cluster;
  write_json(prov, a.provenance.empty() ? sibling(a.output, ".provenance.json") : fs::path(a.provenance));
  out << "synthetic: " << a.cfg.n_genes << " genes x " << a.cfg.n_cells << " cells, "
      << a.cfg.n_clusters << " clusters\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// cluster

struct ClusterArgs {
  std::string input, output, format, method = "kmeans", scores, provenance;
  std::size_t k = 9;
  std::size_t n_pcs = 10;
  std::uint64_t seed = 0;
  bool no_normalize = false, no_log = false, scale_genes = false;
  unsigned workers = 1;
};

void write_scores_csv(const fs::path& path, const std::vector<std::string>& cell_ids,
                      const Eigen::MatrixXd& scores) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "cell_id";
  for (Eigen::Index j = 0; j < scores.cols(); ++j) out << ",PC" << j + 1;
  out << '\n';
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    out << csv::quote(cell_ids[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < scores.cols(); ++j) out << ',' << format_real(scores(i, j));
    out << '\n';
  }
}

int cluster(const ClusterArgs& a, std::ostream& out, std::ostream&) {
  ClusteringSpec spec;
  spec.method = parse_cluster_method(a.method);
  spec.k = a.k;
  spec.n_pcs = a.n_pcs;
  spec.seed = a.seed;
  spec.pre = {!a.no_normalize, !a.no_log};
  spec.scale_genes = a.scale_genes;

  const RealMatrix m = as_real(load(a.input, ""));
  try {
    spec.validate(m.n_genes(), m.n_cells());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto result = cluster_pipeline(m, spec, a.workers);
  write_labels_csv(a.output, m.cell_ids(), result.labels);
  if (!a.scores.empty()) write_scores_csv(a.scores, m.cell_ids(), result.pca.scores);

  Json params{{"input", a.input},
              {"output", a.output},
              {"format", nullable_path(a.format)},
              {"method", to_string(spec.method)},
              {"k", spec.k},
              {"n-pcs", spec.n_pcs},
              {"seed", spec.seed},
              {"no-normalize", a.no_normalize},
              {"no-log", a.no_log},
              {"scale-genes", a.scale_genes},
              {"scores", nullable_path(a.scores)}};
  auto prov = provenance("cluster", params);
  prov["spec"] = to_json(spec);
  prov["n_clusters"] = result.labels.n_clusters();
  prov["explained_variance"] = result.pca.explained_variance;
  write_json(prov, a.provenance.empty() ? sibling(a.output, ".provenance.json") : fs::path(a.provenance));
  out << to_string(spec.method) << ": " << result.labels.n_clusters() << " clusters over "
      << m.n_cells() << " cells\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string manifest, output, csv_dir;
  unsigned workers = 1;
};

struct MethodEntry {
  std::string name;
  fs::path path;
  std::optional<fs::path> labels;
};

struct Manifest {
  fs::path reference;
  fs::path observed;
  std::optional<fs::path> reference_labels;
  std::optional<fs::path> observed_labels;
  std::vector<MethodEntry> methods;
  Preprocess pre{};
  bool correlation_matrices = true;
  std::optional<ClusteringSpec> clustering;
};

Manifest parse_manifest(const fs::path& path) {
  const Json doc = read_json(path);
  const fs::path base = path.parent_path();
  auto resolve = [&](const Json& v, const char* what) {
    if (!v.is_string()) throw UsageError(std::string("manifest: '") + what + "' must be a path string");
    fs::path p = v.get<std::string>();
    if (p.is_relative()) p = base / p;
    if (!fs::exists(p)) throw UsageError(std::string("manifest: ") + what + " file " + p.string() + " does not exist");
    return p;
  };
  Manifest m;
  if (!doc.contains("reference") || !doc.contains("observed"))
    throw UsageError("manifest needs 'reference' and 'observed'");
  m.reference = resolve(doc["reference"], "reference");
  m.observed = resolve(doc["observed"], "observed");
  if (doc.contains("reference_labels")) m.reference_labels = resolve(doc["reference_labels"], "reference_labels");
  if (doc.contains("observed_labels")) m.observed_labels = resolve(doc["observed_labels"], "observed_labels");
  std::set<std::string> names{"observed"};
  for (const auto& entry : doc.value("methods", Json::array())) {
    MethodEntry e;
    e.name = entry.at("name").get<std::string>();
    if (!names.insert(e.name).second)
      throw UsageError("manifest: duplicate or reserved method name '" + e.name + "'");
    e.path = resolve(entry.at("path"), "method path");
    if (entry.contains("labels")) e.labels = resolve(entry["labels"], "method labels");
    m.methods.push_back(std::move(e));
  }
  if (doc.contains("preprocess")) {
    m.pre.normalize = doc["preprocess"].value("normalize", true);
    m.pre.log = doc["preprocess"].value("log1p", true);
  }
  m.correlation_matrices = doc.value("correlation_matrices", true);
  if (doc.contains("clustering")) {
    const auto& c = doc["clustering"];
    if (!c.contains("seed")) throw UsageError("manifest: clustering needs an explicit 'seed'");
    ClusteringSpec spec;
    spec.method = parse_cluster_method(c.value("method", std::string("kmeans")));
    spec.k = c.value("k", std::size_t{9});
    spec.n_pcs = c.value("n_pcs", std::size_t{10});
    spec.seed = c.at("seed").get<std::uint64_t>();
    spec.pre = m.pre;
    spec.scale_genes = c.value("scale_genes", false);
    m.clustering = spec;
  }
  return m;
}

void write_correlation_csv(const fs::path& path, const std::vector<std::string>& ids,
                           const CorrelationVector& v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "id,correlation\n";
  for (std::size_t i = 0; i < ids.size(); ++i)
    out << csv::quote(ids[i]) << ',' << (v.values[i] ? format_real(*v.values[i]) : "NA") << '\n';
}

int eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const Manifest manifest = parse_manifest(a.manifest);
  EvalOptions opts{manifest.pre, manifest.correlation_matrices, a.workers};

  RealMatrix reference = as_real(read_matrix(manifest.reference));
  auto labels_for = [&](const RealMatrix& m, const std::optional<fs::path>& file)
      -> std::optional<Partition> {
    if (file) return align_labels(read_labels_csv(*file), m.cell_ids());
    if (manifest.clustering) return cluster_pipeline(m, *manifest.clustering, a.workers).labels;
    return std::nullopt;
  };
  auto ref_labels = labels_for(reference, manifest.reference_labels);
  const auto ctx = make_reference_context(reference, ref_labels, opts);

  if (!a.csv_dir.empty()) fs::create_directories(a.csv_dir);
  Json methods = Json::array();
  std::size_t ok = 0, user_ok = 0;

  std::vector<MethodEntry> entries{{"observed", manifest.observed, manifest.observed_labels}};
  entries.insert(entries.end(), manifest.methods.begin(), manifest.methods.end());
  for (const auto& entry : entries) {
    Json row{{"name", entry.name}, {"path", entry.path.string()}};
    try {
      const RealMatrix recovered = as_real(read_matrix(entry.path));
      if (recovered.n_genes() != reference.n_genes() || recovered.n_cells() != reference.n_cells())
        throw DomainError("dimensions " + std::to_string(recovered.n_genes()) + "x" +
                          std::to_string(recovered.n_cells()) + " differ from reference " +
                          std::to_string(reference.n_genes()) + "x" +
                          std::to_string(reference.n_cells()));
      std::optional<Partition> method_labels;
      if (ctx.labels) method_labels = labels_for(recovered, entry.labels);
      const auto report = evaluate_method(entry.name, recovered, ctx, method_labels, opts);
      row["status"] = "ok";
      row["metrics"] = to_json(report);
      if (!a.csv_dir.empty()) {
        write_correlation_csv(fs::path(a.csv_dir) / (entry.name + ".gene_correlations.csv"),
                              reference.gene_ids(), report.gene_correlations);
        write_correlation_csv(fs::path(a.csv_dir) / (entry.name + ".cell_correlations.csv"),
                              reference.cell_ids(), report.cell_correlations);
      }
      ++ok;
      if (entry.name != "observed") ++user_ok;
    } catch (const std::exception& e) {
      row["status"] = "error";
      row["error"] = e.what();
      err << "error: method '" << entry.name << "': " << e.what() << '\n';
    }
    methods.push_back(std::move(row));
  }

  Json params{{"manifest", a.manifest}, {"output", a.output}, {"csv-dir", nullable_path(a.csv_dir)}};
  Json doc = provenance("eval", params);
  doc["reference"] = manifest.reference.string();
  doc["preprocess"] = to_json(manifest.pre);
  doc["correlation"] = "pearson";
  doc["cmd_formula"] = kCmdFormula;
  doc["jaccard_variant"] = "pair-counting";
  doc["clustering"] = manifest.clustering ? to_json(*manifest.clustering) : Json(nullptr);
  doc["methods"] = std::move(methods);
  write_json(doc, a.output);

  out << "evaluated " << ok << " of " << entries.size() << " entries\n";
  const bool success = manifest.methods.empty() ? ok > 0 : user_ok > 0;
  return success ? kOk : kFailure;
}

// ---------------------------------------------------------------------------
// compare-stats

struct CompareArgs {
  std::string original, other, output, summary, svg, provenance;
  bool normalized = false;
};

int compare_stats(const CompareArgs& a, std::ostream& out, std::ostream& err) {
  const RealMatrix original = as_real(read_matrix(a.original));
  const RealMatrix other = as_real(read_matrix(a.other));
  const auto genes = matched_gene_ids(original, other);
  if (genes.empty()) {
    err << "error: no shared gene ids (original has " << original.n_genes() << ", other has "
        << other.n_genes() << ")\n";
    return kFailure;
  }
  std::optional<Preprocess> pre;
  if (a.normalized) pre = Preprocess{};
  const auto cmp = stats_comparison(original, other, genes, pre);
  write_stats_csv(cmp, a.output);
  if (!a.svg.empty()) write_stats_svg(cmp, a.svg);

  const fs::path summary = a.summary.empty() ? sibling(a.output, ".summary.json") : fs::path(a.summary);
  Json params{{"original", a.original},
              {"other", a.other},
              {"output", a.output},
              {"summary", summary.string()},
              {"svg", nullable_path(a.svg)},
              {"normalized", a.normalized}};
  Json doc = provenance("compare-stats", params);
  doc["summary"] = stats_summary_json(cmp);
  write_json(doc, summary);

  auto show = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string("NA"); };
  out << "genes " << cmp.records.size() << ": r_mean " << show(cmp.r_mean) << ", r_sd "
      << show(cmp.r_sd) << ", r_zero_fraction " << show(cmp.r_zero_fraction) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"scbench: downsampling and evaluation harness for scRNA-seq recovery methods",
               "scbench"};
  app.require_subcommand(1);

  BuildRefArgs br;
  auto* c_br = app.add_subcommand("build-ref", "Filter a count matrix into a reference");
  c_br->add_option("--input", br.input, "Count matrix (.mtx or .csv)")->required()->check(CLI::ExistingFile);
  c_br->add_option("--output", br.output, "Reference matrix path")->required();
  c_br->add_option("--format", br.format, "mtx or csv (default: from extension)");
  c_br->add_option("--min-cell-library-size", br.cfg.min_cell_library_size)->capture_default_str();
  c_br->add_option("--min-gene-mean", br.cfg.min_gene_mean)->capture_default_str();
  c_br->add_option("--min-gene-nonzero-fraction", br.cfg.min_gene_nonzero_fraction)->capture_default_str();
  c_br->add_option("--report", br.report, "Filter report JSON (default: <output>.filter.json)");
  c_br->add_option("--provenance", br.provenance, "Provenance JSON (default: <output>.provenance.json)");

  DownsampleArgs ds;
  auto* c_ds = app.add_subcommand("downsample", "Simulate observed counts from a reference");
  c_ds->add_option("--reference", ds.reference)->required()->check(CLI::ExistingFile);
  c_ds->add_option("--original", ds.original, "Original matrix (amended mode)")->check(CLI::ExistingFile);
  c_ds->add_option("--output", ds.output)->required();
  c_ds->add_option("--format", ds.format);
  c_ds->add_option("--mode", ds.mode)->check(CLI::IsMember({"basic", "amended"}))->capture_default_str();
  c_ds->add_option("--efficiency", ds.efficiency, "Mean sequencing efficiency (basic mode)");
  c_ds->add_option("--cv", ds.cv, "Coefficient of variation of the efficiency")->capture_default_str();
  c_ds->add_option("--seed", ds.seed)->required();
  c_ds->add_option("--tol", ds.tol)->capture_default_str();
  c_ds->add_option("--max-iter", ds.max_iter)->capture_default_str();
  c_ds->add_option("--workers", ds.workers)->check(CLI::PositiveNumber)->capture_default_str();
  c_ds->add_option("--provenance", ds.provenance);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Generate a synthetic clustered count matrix");
  c_sim->add_option("--genes", sim.cfg.n_genes)->capture_default_str();
  c_sim->add_option("--cells", sim.cfg.n_cells)->capture_default_str();
  c_sim->add_option("--clusters", sim.cfg.n_clusters)->capture_default_str();
  c_sim->add_option("--separation", sim.cfg.cluster_separation)->capture_default_str();
  c_sim->add_option("--base-mean", sim.cfg.base_mean)->capture_default_str();
  c_sim->add_option("--seed", sim.cfg.seed)->required();
  c_sim->add_option("--output", sim.output)->required();
  c_sim->add_option("--labels", sim.labels, "True labels CSV (default: <output>.labels.csv)");
  c_sim->add_option("--format", sim.format);
  c_sim->add_option("--workers", sim.workers)->check(CLI::PositiveNumber);
  c_sim->add_option("--provenance", sim.provenance);

  ClusterArgs cl;
  auto* c_cl = app.add_subcommand("cluster", "Cluster cells on principal components");
  c_cl->add_option("--input", cl.input)->required()->check(CLI::ExistingFile);
  c_cl->add_option("--output", cl.output, "Labels CSV")->required();
  c_cl->add_option("--format", cl.format);
  c_cl->add_option("--method", cl.method)->check(CLI::IsMember({"kmeans", "hclust-ward-pc"}))->capture_default_str();
  c_cl->add_option("--k", cl.k)->capture_default_str();
  c_cl->add_option("--n-pcs", cl.n_pcs)->capture_default_str();
  c_cl->add_option("--seed", cl.seed)->required();
  c_cl->add_flag("--no-normalize", cl.no_normalize);
  c_cl->add_flag("--no-log", cl.no_log);
  c_cl->add_flag("--scale-genes", cl.scale_genes);
  c_cl->add_option("--scores", cl.scores, "Optional PCA scores CSV");
  c_cl->add_option("--workers", cl.workers)->check(CLI::PositiveNumber);
  c_cl->add_option("--provenance", cl.provenance);

  EvalArgs ev;
  auto* c_ev = app.add_subcommand("eval", "Evaluate recovered matrices against the reference");
  c_ev->add_option("--manifest", ev.manifest)->required()->check(CLI::ExistingFile);
  c_ev->add_option("--output", ev.output, "Consolidated JSON report")->required();
  c_ev->add_option("--csv-dir", ev.csv_dir, "Directory for per-method correlation CSVs");
  c_ev->add_option("--workers", ev.workers)->check(CLI::PositiveNumber);

  CompareArgs cs;
  auto* c_cs = app.add_subcommand("compare-stats", "Compare per-gene mean, sd and zero fraction");
  c_cs->add_option("--original", cs.original)->required()->check(CLI::ExistingFile);
  c_cs->add_option("--other", cs.other)->required()->check(CLI::ExistingFile);
  c_cs->add_option("--output", cs.output, "Per-gene CSV")->required();
  c_cs->add_option("--summary", cs.summary, "Summary JSON (default: <output>.summary.json)");
  c_cs->add_option("--svg", cs.svg, "Optional scatter panels");
  c_cs->add_flag("--normalized", cs.normalized, "Use normalized log1p values instead of raw counts");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c_br) return build_ref(br, out, err);
    if (*c_ds) return downsample(ds, out, err);
    if (*c_sim) return simulate(sim, out, err);
    if (*c_cl) return cluster(cl, out, err);
    if (*c_ev) return eval(ev, out, err);
    if (*c_cs) return compare_stats(cs, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace scbench::cli
