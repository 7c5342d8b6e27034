#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "scbench/error.hpp"

namespace scbench {

using Index = std::uint32_t;
using Count = std::uint32_t;

/// Synthesized identifiers `<prefix>1 .. <prefix>n`.
std::vector<std::string> make_ids(const std::string& prefix, std::size_t n);

/// One stored entry of a matrix column.
template <typename T>
struct Entry {
  Index row;
  T value;
};

/// Genes x cells sparse matrix in compressed-column layout.
///
/// Only strictly positive values are stored; absent entries are zero. Each
/// column's row indices are strictly increasing. Immutable after
/// construction, so concurrent reads are safe.
template <typename T>
class SparseMatrix {
  static_assert(std::is_arithmetic_v<T>);

 public:
  using value_type = T;

  SparseMatrix() = default;

  /// All-zero matrix with synthesized ids.
  SparseMatrix(std::size_t n_genes, std::size_t n_cells)
      : SparseMatrix(n_genes, n_cells, std::vector<std::size_t>(n_cells + 1, 0),
                     {}, {}, make_ids("G", n_genes), make_ids("C", n_cells)) {}

  /// Takes ownership of CSC arrays; throws DomainError if any invariant fails.
  SparseMatrix(std::size_t n_genes, std::size_t n_cells,
               std::vector<std::size_t> col_ptr, std::vector<Index> row_idx,
               std::vector<T> values, std::vector<std::string> gene_ids,
               std::vector<std::string> cell_ids)
      : n_genes_(n_genes),
        n_cells_(n_cells),
        col_ptr_(std::move(col_ptr)),
        row_idx_(std::move(row_idx)),
        values_(std::move(values)),
        gene_ids_(std::move(gene_ids)),
        cell_ids_(std::move(cell_ids)) {
    validate();
  }

  std::size_t n_genes() const noexcept { return n_genes_; }
  std::size_t n_cells() const noexcept { return n_cells_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const Index> col_rows(std::size_t c) const {
    return {row_idx_.data() + col_ptr_[c], col_ptr_[c + 1] - col_ptr_[c]};
  }
  std::span<const T> col_values(std::size_t c) const {
    return {values_.data() + col_ptr_[c], col_ptr_[c + 1] - col_ptr_[c]};
  }

  const std::vector<std::size_t>& col_ptr() const noexcept { return col_ptr_; }
  const std::vector<Index>& row_indices() const noexcept { return row_idx_; }
  const std::vector<T>& values() const noexcept { return values_; }
  const std::vector<std::string>& gene_ids() const noexcept { return gene_ids_; }
  const std::vector<std::string>& cell_ids() const noexcept { return cell_ids_; }

  /// Value at (g, c); zero when absent.
  T at(std::size_t g, std::size_t c) const {
    auto rows = col_rows(c);
    auto it = std::lower_bound(rows.begin(), rows.end(), static_cast<Index>(g));
    if (it == rows.end() || *it != g) return T{0};
    return col_values(c)[static_cast<std::size_t>(it - rows.begin())];
  }

  std::vector<T> dense_column(std::size_t c) const {
    std::vector<T> out(n_genes_, T{0});
    auto rows = col_rows(c);
    auto vals = col_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) out[rows[k]] = vals[k];
    return out;
  }

  /// Replace identifiers; sizes must match and ids must be unique.
  SparseMatrix with_ids(std::vector<std::string> gene_ids,
                        std::vector<std::string> cell_ids) const {
    return SparseMatrix(n_genes_, n_cells_, col_ptr_, row_idx_, values_,
                        std::move(gene_ids), std::move(cell_ids));
  }

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  void validate() const;

  std::size_t n_genes_ = 0;
  std::size_t n_cells_ = 0;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<Index> row_idx_;
  std::vector<T> values_;
  std::vector<std::string> gene_ids_;
  std::vector<std::string> cell_ids_;
};

using CountMatrix = SparseMatrix<Count>;
using RealMatrix = SparseMatrix<double>;
using AnyMatrix = std::variant<CountMatrix, RealMatrix>;

/// Row-major (CSR) index over a SparseMatrix, for per-gene traversal.
template <typename T>
struct RowMajorView {
  std::vector<std::size_t> row_ptr;
  std::vector<Index> col_idx;
  std::vector<T> values;

  std::span<const Index> row_cols(std::size_t g) const {
    return {col_idx.data() + row_ptr[g], row_ptr[g + 1] - row_ptr[g]};
  }
  std::span<const T> row_values(std::size_t g) const {
    return {values.data() + row_ptr[g], row_ptr[g + 1] - row_ptr[g]};
  }
};

template <typename T>
RowMajorView<T> row_major(const SparseMatrix<T>& m) {
  RowMajorView<T> view;
  view.row_ptr.assign(m.n_genes() + 1, 0);
  for (Index r : m.row_indices()) ++view.row_ptr[r + 1];
  for (std::size_t g = 0; g < m.n_genes(); ++g) view.row_ptr[g + 1] += view.row_ptr[g];
  view.col_idx.resize(m.nnz());
  view.values.resize(m.nnz());
  std::vector<std::size_t> cursor(view.row_ptr.begin(), view.row_ptr.end() - 1);
  for (std::size_t c = 0; c < m.n_cells(); ++c) {
    auto rows = m.col_rows(c);
    auto vals = m.col_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::size_t slot = cursor[rows[k]]++;
      view.col_idx[slot] = static_cast<Index>(c);
      view.values[slot] = vals[k];
    }
  }
  return view;
}

/// Incremental column-by-column construction. Zeros are dropped.
template <typename T>
class MatrixBuilder {
 public:
  explicit MatrixBuilder(std::size_t n_genes) : n_genes_(n_genes) {}

  /// Append the next column; `entries` must have strictly increasing rows.
  void push_column(std::span<const Entry<T>> entries) {
    for (const auto& e : entries) {
      if (e.value == T{0}) continue;
      row_idx_.push_back(e.row);
      values_.push_back(e.value);
    }
    col_ptr_.push_back(values_.size());
  }

  void push_dense_column(std::span<const T> column) {
    for (std::size_t g = 0; g < column.size(); ++g) {
      if (column[g] == T{0}) continue;
      row_idx_.push_back(static_cast<Index>(g));
      values_.push_back(column[g]);
    }
    col_ptr_.push_back(values_.size());
  }

  std::size_t n_cells() const noexcept { return col_ptr_.size() - 1; }

  SparseMatrix<T> build(std::vector<std::string> gene_ids,
                        std::vector<std::string> cell_ids) && {
    std::size_t n_cells = col_ptr_.size() - 1;
    return SparseMatrix<T>(n_genes_, n_cells, std::move(col_ptr_), std::move(row_idx_),
                           std::move(values_), std::move(gene_ids), std::move(cell_ids));
  }

  SparseMatrix<T> build() && {
    std::size_t n_cells = col_ptr_.size() - 1;
    auto genes = make_ids("G", n_genes_);
    auto cells = make_ids("C", n_cells);
    return std::move(*this).build(std::move(genes), std::move(cells));
  }

 private:
  std::size_t n_genes_;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<Index> row_idx_;
  std::vector<T> values_;
};

/// Triplet (coordinate) construction; rejects duplicate coordinates.
template <typename T>
struct Triplet {
  Index row;
  Index col;
  T value;
};

template <typename T>
SparseMatrix<T> from_triplets(std::size_t n_genes, std::size_t n_cells,
                              std::vector<Triplet<T>> triplets,
                              std::vector<std::string> gene_ids,
                              std::vector<std::string> cell_ids) {
  std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  std::vector<std::size_t> col_ptr(n_cells + 1, 0);
  std::vector<Index> rows;
  std::vector<T> vals;
  rows.reserve(triplets.size());
  vals.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size(); ++k) {
    const auto& t = triplets[k];
    if (t.row >= n_genes || t.col >= n_cells) {
      throw DomainError("coordinate (" + std::to_string(t.row + 1) + "," +
                        std::to_string(t.col + 1) + ") outside matrix bounds");
    }
    if (k > 0 && triplets[k - 1].row == t.row && triplets[k - 1].col == t.col) {
      throw DomainError("duplicate coordinate (" + std::to_string(t.row + 1) + "," +
                        std::to_string(t.col + 1) + ")");
    }
    if (t.value == T{0}) continue;
    rows.push_back(t.row);
    vals.push_back(t.value);
    ++col_ptr[t.col + 1];
  }
  for (std::size_t c = 0; c < n_cells; ++c) col_ptr[c + 1] += col_ptr[c];
  return SparseMatrix<T>(n_genes, n_cells, std::move(col_ptr), std::move(rows),
                         std::move(vals), std::move(gene_ids), std::move(cell_ids));
}

/// Widen counts to reals, keeping ids and sparsity.
RealMatrix to_real(const CountMatrix& m);

/// Either alternative of an AnyMatrix as a RealMatrix.
RealMatrix as_real(const AnyMatrix& m);

/// Dense row-major genes x cells copy; intended for small matrices.
template <typename T>
std::vector<double> to_dense(const SparseMatrix<T>& m) {
  std::vector<double> out(m.n_genes() * m.n_cells(), 0.0);
  for (std::size_t c = 0; c < m.n_cells(); ++c) {
    auto rows = m.col_rows(c);
    auto vals = m.col_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k)
      out[rows[k] * m.n_cells() + c] = static_cast<double>(vals[k]);
  }
  return out;
}

template <typename T>
void SparseMatrix<T>::validate() const {
  if (gene_ids_.size() != n_genes_)
    throw DomainError("gene id count " + std::to_string(gene_ids_.size()) +
                      " != n_genes " + std::to_string(n_genes_));
  if (cell_ids_.size() != n_cells_)
    throw DomainError("cell id count " + std::to_string(cell_ids_.size()) +
                      " != n_cells " + std::to_string(n_cells_));
  if (col_ptr_.size() != n_cells_ + 1 || col_ptr_.front() != 0 ||
      col_ptr_.back() != values_.size() || row_idx_.size() != values_.size())
    throw DomainError("inconsistent compressed-column arrays");
  for (std::size_t c = 0; c < n_cells_; ++c) {
    if (col_ptr_[c] > col_ptr_[c + 1]) throw DomainError("column pointers decrease");
    for (std::size_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) {
      if (row_idx_[k] >= n_genes_) throw DomainError("row index out of range");
      if (k > col_ptr_[c] && row_idx_[k] <= row_idx_[k - 1])
        throw DomainError("row indices not strictly increasing in column " +
                          std::to_string(c));
      if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(values_[k])) throw DomainError("non-finite value");
      }
      if (!(values_[k] > T{0})) throw DomainError("stored values must be positive");
    }
  }
  auto check_unique = [](const std::vector<std::string>& ids, const char* what) {
    std::unordered_set<std::string> seen;
    seen.reserve(ids.size());
    for (const auto& id : ids)
      if (!seen.insert(id).second)
        throw DomainError(std::string("duplicate ") + what + " id '" + id + "'");
  };
  check_unique(gene_ids_, "gene");
  check_unique(cell_ids_, "cell");
}

}  // namespace scbench
