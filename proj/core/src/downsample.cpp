#include "scbench/downsample.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <random>

#include <boost/math/special_functions/gamma.hpp>

#include "scbench/parallel.hpp"
#include "scbench/random.hpp"
#include "scbench/summary.hpp"

namespace scbench {

std::string to_string(DownsampleMode mode) {
  return mode == DownsampleMode::Basic ? "basic" : "amended";
}

DownsampleMode parse_downsample_mode(const std::string& name) {
  if (name == "basic") return DownsampleMode::Basic;
  if (name == "amended") return DownsampleMode::Amended;
  throw DomainError("unknown downsample mode '" + name + "'");
}

void DownsampleConfig::validate() const {
  if (!(mean_efficiency > 0 && mean_efficiency < 1))
    throw DomainError("mean_efficiency must lie in (0, 1)");
  if (!(efficiency_cv > 0) || !std::isfinite(efficiency_cv))
    throw DomainError("efficiency_cv must be positive");
}

double DownsampleConfig::tail_mass_above_one() const {
  return boost::math::gamma_q(gamma_shape(), 1.0 / gamma_scale());
}

EfficiencyVector sample_efficiencies(std::size_t n_cells, const DownsampleConfig& cfg,
                                     unsigned workers) {
  cfg.validate();
  EfficiencyVector out;
  out.tau.resize(n_cells);
  std::vector<char> clamped(n_cells, 0);
  const double shape = cfg.gamma_shape();
  const double scale = cfg.gamma_scale();
  parallel_for(n_cells, workers, [&](std::size_t c) {
    auto rng = substream(cfg.seed, Stream::Efficiency, c);
    std::gamma_distribution<double> gamma(shape, scale);
    double t = gamma(rng);
    if (t > 1.0) {
      t = 1.0;
      clamped[c] = 1;
    } else if (!(t > 0.0)) {
      t = std::numeric_limits<double>::min();
      clamped[c] = 1;
    }
    out.tau[c] = t;
  });
  out.clamp_events = static_cast<std::size_t>(std::count(clamped.begin(), clamped.end(), 1));
  return out;
}

template <typename T>
CountMatrix poisson_downsample(const SparseMatrix<T>& ref, std::span<const double> tau,
                               std::uint64_t seed, unsigned workers) {
  if (tau.size() != ref.n_cells())
    throw DomainError("efficiency vector length " + std::to_string(tau.size()) +
                      " != n_cells " + std::to_string(ref.n_cells()));
  for (double t : tau)
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("efficiencies must lie in (0, 1]");

  std::vector<std::vector<Entry<Count>>> columns(ref.n_cells());
  parallel_for(ref.n_cells(), workers, [&](std::size_t c) {
    auto rng = substream(seed, Stream::Poisson, c);
    auto rows = ref.col_rows(c);
    auto vals = ref.col_values(c);
    auto& col = columns[c];
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const double rate = tau[c] * static_cast<double>(vals[k]);
      if (!(rate > 0.0)) continue;
      std::poisson_distribution<long long> draw(rate);
      const long long y = draw(rng);
      if (y > static_cast<long long>(std::numeric_limits<Count>::max()))
        throw DomainError("Poisson draw exceeds count range");
      if (y > 0) col.push_back({rows[k], static_cast<Count>(y)});
    }
  });

  MatrixBuilder<Count> builder(ref.n_genes());
  for (const auto& col : columns) builder.push_column(col);
  return std::move(builder).build(ref.gene_ids(), ref.cell_ids());
}

template CountMatrix poisson_downsample(const SparseMatrix<Count>&, std::span<const double>,
                                        std::uint64_t, unsigned);
template CountMatrix poisson_downsample(const SparseMatrix<double>&, std::span<const double>,
                                        std::uint64_t, unsigned);

double MarginalTargets::consistency_error() const {
  double gene_mass = 0.0;
  for (double m : gene_means) gene_mass += m;
  gene_mass *= static_cast<double>(library_sizes.size());
  double lib_mass = 0.0;
  for (double l : library_sizes) lib_mass += l;
  const double scale = std::max(gene_mass, lib_mass);
  return scale > 0 ? std::abs(gene_mass - lib_mass) / scale : 0.0;
}

namespace {

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t k,
                                        std::mt19937_64& rng) {
  std::vector<std::size_t> all(population);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> out;
  out.reserve(k);
  std::sample(all.begin(), all.end(), std::back_inserter(out), k, rng);
  return out;
}

}  // namespace

MarginalTargets draw_targets(const CountMatrix& original, std::size_t n_genes,
                             std::size_t n_cells, std::uint64_t seed) {
  if (n_genes > original.n_genes() || n_cells > original.n_cells())
    throw DomainError("requested " + std::to_string(n_genes) + "x" + std::to_string(n_cells) +
                      " targets from a " + std::to_string(original.n_genes()) + "x" +
                      std::to_string(original.n_cells()) + " original");
  if (n_genes == 0 || n_cells == 0) throw DomainError("targets need at least one gene and cell");

  auto gene_rng = substream(seed, Stream::TargetSampling, 0);
  auto cell_rng = substream(seed, Stream::TargetSampling, 1);
  MarginalTargets out;
  out.gene_indices = sample_indices(original.n_genes(), n_genes, gene_rng);
  out.cell_indices = sample_indices(original.n_cells(), n_cells, cell_rng);

  const auto genes = gene_summary(original);
  const auto cells = cell_summary(original);
  out.gene_means.reserve(n_genes);
  for (std::size_t g : out.gene_indices) out.gene_means.push_back(genes.mean[g]);
  out.library_sizes.reserve(n_cells);
  for (std::size_t c : out.cell_indices) out.library_sizes.push_back(cells.library_size[c]);

  double gene_mass = 0.0;
  for (double m : out.gene_means) gene_mass += m;
  gene_mass *= static_cast<double>(n_cells);
  double lib_mass = 0.0;
  for (double l : out.library_sizes) lib_mass += l;
  if (lib_mass == 0.0 && gene_mass > 0.0)
    throw DomainError("sampled cells have zero library size; cannot match gene-mean mass");
  out.library_rescale = lib_mass > 0.0 ? gene_mass / lib_mass : 1.0;
  for (double& l : out.library_sizes) l *= out.library_rescale;
  return out;
}

namespace {

std::vector<double> assign_by_rank(std::vector<double> targets, const std::vector<double>& keys) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::stable_sort(targets.begin(), targets.end());
  std::vector<double> out(keys.size());
  for (std::size_t k = 0; k < order.size(); ++k) out[order[k]] = targets[k];
  return out;
}

}  // namespace

MarginalTargets align_targets_by_rank(const MarginalTargets& targets, const RealMatrix& ref) {
  if (targets.gene_means.size() != ref.n_genes() ||
      targets.library_sizes.size() != ref.n_cells())
    throw DomainError("target lengths do not match the reference dimensions");
  MarginalTargets out = targets;
  out.gene_means = assign_by_rank(targets.gene_means, gene_summary(ref).mean);
  out.library_sizes = assign_by_rank(targets.library_sizes, cell_summary(ref).library_size);
  return out;
}

ScaledReference match_marginals(const RealMatrix& ref, const MarginalTargets& targets,
                                const IpfOptions& options) {
  const std::size_t n_genes = ref.n_genes();
  const std::size_t n_cells = ref.n_cells();
  if (targets.gene_means.size() != n_genes || targets.library_sizes.size() != n_cells)
    throw DomainError("target lengths do not match the reference dimensions");
  for (double v : targets.gene_means)
    if (!(v >= 0) || !std::isfinite(v)) throw DomainError("gene mean targets must be >= 0");
  for (double v : targets.library_sizes)
    if (!(v >= 0) || !std::isfinite(v)) throw DomainError("library size targets must be >= 0");

  std::vector<double> row_target(n_genes);
  for (std::size_t g = 0; g < n_genes; ++g)
    row_target[g] = targets.gene_means[g] * static_cast<double>(n_cells);
  const std::vector<double>& col_target = targets.library_sizes;

  const auto rows = row_major(ref);
  ScaledReference out;
  out.base = ref;
  out.row_factors.assign(n_genes, 1.0);
  out.col_factors.assign(n_cells, 1.0);
  for (std::size_t g = 0; g < n_genes; ++g)
    if (row_target[g] == 0.0) out.row_factors[g] = 0.0;
  for (std::size_t c = 0; c < n_cells; ++c)
    if (col_target[c] == 0.0) out.col_factors[c] = 0.0;

  auto& alpha = out.row_factors;
  auto& beta = out.col_factors;
  std::vector<double> row_inner(n_genes);  // sum_c lambda_gc * beta_c
  std::vector<double> col_inner(n_cells);  // sum_g alpha_g * lambda_gc

  auto compute_row_inner = [&] {
    parallel_for(n_genes, options.workers, [&](std::size_t g) {
      auto cols = rows.row_cols(g);
      auto vals = rows.row_values(g);
      double s = 0.0;
      for (std::size_t k = 0; k < cols.size(); ++k) s += vals[k] * beta[cols[k]];
      row_inner[g] = s;
    });
  };
  auto compute_col_inner = [&] {
    parallel_for(n_cells, options.workers, [&](std::size_t c) {
      auto r = ref.col_rows(c);
      auto vals = ref.col_values(c);
      double s = 0.0;
      for (std::size_t k = 0; k < r.size(); ++k) s += alpha[r[k]] * vals[k];
      col_inner[c] = s;
    });
  };
  auto relative_error = [](double achieved, double target) {
    if (target == 0.0) return 0.0;
    return std::abs(achieved - target) / target;
  };
  auto measure = [&] {
    compute_row_inner();
    compute_col_inner();
    double row_err = 0.0, col_err = 0.0;
    for (std::size_t g = 0; g < n_genes; ++g)
      row_err = std::max(row_err, relative_error(alpha[g] * row_inner[g], row_target[g]));
    for (std::size_t c = 0; c < n_cells; ++c)
      col_err = std::max(col_err, relative_error(beta[c] * col_inner[c], col_target[c]));
    out.max_row_error = row_err;
    out.max_col_error = col_err;
    return std::max(row_err, col_err);
  };

  double err = measure();
  while (err > options.tol && out.iterations < options.max_iter) {
    compute_row_inner();
    for (std::size_t g = 0; g < n_genes; ++g)
      if (row_target[g] > 0.0 && row_inner[g] > 0.0) alpha[g] = row_target[g] / row_inner[g];
    compute_col_inner();
    for (std::size_t c = 0; c < n_cells; ++c)
      if (col_target[c] > 0.0 && col_inner[c] > 0.0) beta[c] = col_target[c] / col_inner[c];
    ++out.iterations;
    err = measure();
    out.error_history.push_back(err);
  }
  out.converged = err <= options.tol;
  return out;
}

RealMatrix ScaledReference::materialize() const {
  MatrixBuilder<double> builder(base.n_genes());
  std::vector<Entry<double>> col;
  for (std::size_t c = 0; c < base.n_cells(); ++c) {
    col.clear();
    auto rows = base.col_rows(c);
    auto vals = base.col_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const double v = row_factors[rows[k]] * col_factors[c] * vals[k];
      if (v > 0.0) col.push_back({rows[k], v});
    }
    builder.push_column(col);
  }
  return std::move(builder).build(base.gene_ids(), base.cell_ids());
}

AmendedResult amended_downsample(const RealMatrix& ref, const CountMatrix& original,
                                 const DownsampleConfig& cfg, const IpfOptions& options) {
  AmendedResult out;
  const auto drawn = draw_targets(original, ref.n_genes(), ref.n_cells(), cfg.seed);
  out.targets = align_targets_by_rank(drawn, ref);
  out.scaled = match_marginals(ref, out.targets, options);
  const std::vector<double> unit(ref.n_cells(), 1.0);
  out.observed = poisson_downsample(out.scaled.materialize(), unit, cfg.seed, options.workers);
  return out;
}

}  // namespace scbench
