#pragma once

#include <filesystem>
#include <string>

#include "scbench/matrix.hpp"

namespace scbench {

enum class MatrixFormat {
  MatrixMarket,  ///< `%%MatrixMarket matrix coordinate integer|real general`
  DenseCsv,      ///< header row of cell ids, leading column of gene ids
};

/// `.csv` selects DenseCsv; anything else MatrixMarket.
MatrixFormat format_from_path(const std::filesystem::path& path);

/// Parse "mtx"/"matrix-market" or "csv"/"dense-csv".
MatrixFormat parse_format(const std::string& name);

/// Sidecar id files next to a MatrixMarket file: `<stem>.genes.txt`, `<stem>.cells.txt`.
std::filesystem::path gene_sidecar(const std::filesystem::path& path);
std::filesystem::path cell_sidecar(const std::filesystem::path& path);

/// Reads a genes x cells matrix.
///
/// Integer-valued files yield a CountMatrix, real-valued files a RealMatrix.
/// For MatrixMarket the field in the banner decides; for CSV the matrix is a
/// CountMatrix iff every cell parses as a nonnegative integer literal. Explicit
/// zeros are accepted and not stored. Sidecar id files are used when present,
/// otherwise ids are synthesized as G1..Gn and C1..Cm.
///
/// Throws ParseError (with line number) on malformed input, DomainError on
/// negative values or duplicate coordinates, IoError when the file is missing.
AnyMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format);
AnyMatrix read_matrix(const std::filesystem::path& path);

/// Writes a matrix; MatrixMarket output also writes both sidecar id files.
/// Reals use the shortest representation that round-trips exactly.
void write_matrix(const CountMatrix& m, const std::filesystem::path& path, MatrixFormat format);
void write_matrix(const RealMatrix& m, const std::filesystem::path& path, MatrixFormat format);
void write_matrix(const AnyMatrix& m, const std::filesystem::path& path, MatrixFormat format);

/// Shortest round-trip decimal form of a double.
std::string format_real(double v);

}  // namespace scbench
