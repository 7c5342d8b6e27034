#include "scbench/summary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scbench {

template <typename T>
GeneSummary gene_summary(const SparseMatrix<T>& m) {
  const std::size_t n_genes = m.n_genes();
  const double n = static_cast<double>(m.n_cells());
  GeneSummary out;
  out.mean.assign(n_genes, 0.0);
  out.sd.assign(n_genes, 0.0);
  out.zero_fraction.assign(n_genes, 1.0);
  if (m.n_cells() == 0) return out;

  std::vector<double> sum(n_genes, 0.0);
  std::vector<std::size_t> nonzero(n_genes, 0);
  for (std::size_t c = 0; c < m.n_cells(); ++c) {
    auto rows = m.col_rows(c);
    auto vals = m.col_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      sum[rows[k]] += static_cast<double>(vals[k]);
      ++nonzero[rows[k]];
    }
  }
  for (std::size_t g = 0; g < n_genes; ++g) out.mean[g] = sum[g] / n;

  // Squared deviations: stored entries, then the implicit zeros.
  std::vector<double> ss(n_genes, 0.0);
  for (std::size_t c = 0; c < m.n_cells(); ++c) {
    auto rows = m.col_rows(c);
    auto vals = m.col_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const double d = static_cast<double>(vals[k]) - out.mean[rows[k]];
      ss[rows[k]] += d * d;
    }
  }
  for (std::size_t g = 0; g < n_genes; ++g) {
    const double zeros = n - static_cast<double>(nonzero[g]);
    ss[g] += zeros * out.mean[g] * out.mean[g];
    out.sd[g] = std::sqrt(ss[g] / n);
    out.zero_fraction[g] = zeros / n;
  }
  return out;
}

template <typename T>
CellSummary cell_summary(const SparseMatrix<T>& m) {
  CellSummary out;
  out.library_size.resize(m.n_cells());
  for (std::size_t c = 0; c < m.n_cells(); ++c) {
    if constexpr (std::is_integral_v<T>) {
      std::uint64_t total = 0;
      for (T v : m.col_values(c)) total += v;
      out.library_size[c] = static_cast<double>(total);
    } else {
      double total = 0.0;
      for (T v : m.col_values(c)) total += v;
      out.library_size[c] = total;
    }
  }
  return out;
}

template <typename T>
SparseMatrix<T> subset(const SparseMatrix<T>& m, std::span<const std::size_t> genes,
                       std::span<const std::size_t> cells) {
  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> new_row(m.n_genes(), kAbsent);
  for (std::size_t i = 0; i < genes.size(); ++i) {
    if (genes[i] >= m.n_genes())
      throw DomainError("gene index " + std::to_string(genes[i]) + " out of range");
    if (new_row[genes[i]] != kAbsent)
      throw DomainError("duplicate gene index " + std::to_string(genes[i]));
    new_row[genes[i]] = i;
  }
  std::vector<bool> seen_cell(m.n_cells(), false);
  for (std::size_t c : cells) {
    if (c >= m.n_cells()) throw DomainError("cell index " + std::to_string(c) + " out of range");
    if (seen_cell[c]) throw DomainError("duplicate cell index " + std::to_string(c));
    seen_cell[c] = true;
  }

  MatrixBuilder<T> builder(genes.size());
  std::vector<Entry<T>> column;
  for (std::size_t c : cells) {
    column.clear();
    auto rows = m.col_rows(c);
    auto vals = m.col_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (new_row[rows[k]] != kAbsent)
        column.push_back({static_cast<Index>(new_row[rows[k]]), vals[k]});
    }
    std::sort(column.begin(), column.end(),
              [](const auto& a, const auto& b) { return a.row < b.row; });
    builder.push_column(column);
  }
  std::vector<std::string> gene_ids;
  gene_ids.reserve(genes.size());
  for (std::size_t g : genes) gene_ids.push_back(m.gene_ids()[g]);
  std::vector<std::string> cell_ids;
  cell_ids.reserve(cells.size());
  for (std::size_t c : cells) cell_ids.push_back(m.cell_ids()[c]);
  return std::move(builder).build(std::move(gene_ids), std::move(cell_ids));
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

template <typename T>
RealMatrix preprocess(const SparseMatrix<T>& m, const Preprocess& pre) {
  const auto libs = cell_summary(m).library_size;
  double target = 0.0;
  if (pre.normalize) {
    std::vector<double> positive;
    for (double l : libs)
      if (l > 0) positive.push_back(l);
    target = median(std::move(positive));
  }
  std::vector<double> vals(m.nnz());
  for (std::size_t c = 0; c < m.n_cells(); ++c) {
    const double scale = pre.normalize && libs[c] > 0 ? target / libs[c] : 1.0;
    for (std::size_t k = m.col_ptr()[c]; k < m.col_ptr()[c + 1]; ++k) {
      double v = static_cast<double>(m.values()[k]) * scale;
      if (pre.log) v = std::log1p(v);
      vals[k] = v;
    }
  }
  return RealMatrix(m.n_genes(), m.n_cells(), m.col_ptr(), m.row_indices(), std::move(vals),
                    m.gene_ids(), m.cell_ids());
}

template <typename T>
RealMatrix normalize_and_log(const SparseMatrix<T>& m, bool do_log) {
  return preprocess(m, Preprocess{true, do_log});
}

#define SCBENCH_INSTANTIATE(T)                                                          \
  template GeneSummary gene_summary(const SparseMatrix<T>&);                            \
  template CellSummary cell_summary(const SparseMatrix<T>&);                            \
  template SparseMatrix<T> subset(const SparseMatrix<T>&, std::span<const std::size_t>, \
                                  std::span<const std::size_t>);                        \
  template RealMatrix normalize_and_log(const SparseMatrix<T>&, bool);                  \
  template RealMatrix preprocess(const SparseMatrix<T>&, const Preprocess&);

SCBENCH_INSTANTIATE(Count)
SCBENCH_INSTANTIATE(double)

#undef SCBENCH_INSTANTIATE

}  // namespace scbench
