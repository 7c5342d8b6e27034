#include "scbench/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "scbench/csv.hpp"

namespace scbench {

namespace fs = std::filesystem;

std::vector<std::string> make_ids(const std::string& prefix, std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

RealMatrix to_real(const CountMatrix& m) {
  std::vector<double> vals(m.values().begin(), m.values().end());
  return RealMatrix(m.n_genes(), m.n_cells(), m.col_ptr(), m.row_indices(), std::move(vals),
                    m.gene_ids(), m.cell_ids());
}

RealMatrix as_real(const AnyMatrix& m) {
  if (const auto* counts = std::get_if<CountMatrix>(&m)) return to_real(*counts);
  return std::get<RealMatrix>(m);
}

MatrixFormat format_from_path(const fs::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  return ext == ".csv" ? MatrixFormat::DenseCsv : MatrixFormat::MatrixMarket;
}

MatrixFormat parse_format(const std::string& name) {
  if (name == "mtx" || name == "matrix-market") return MatrixFormat::MatrixMarket;
  if (name == "csv" || name == "dense-csv") return MatrixFormat::DenseCsv;
  throw DomainError("unknown matrix format '" + name + "'");
}

namespace {

fs::path sidecar(const fs::path& path, const char* suffix) {
  auto out = path;
  out.replace_extension();
  out += suffix;
  return out;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  return out;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char ch) { return std::isspace(ch) != 0; });
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool looks_integral(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](unsigned char ch) { return std::isdigit(ch) != 0; });
}

Count checked_count(double v, const std::string& path, std::size_t line) {
  if (v > static_cast<double>(std::numeric_limits<Count>::max()))
    throw ParseError(path, line, "count exceeds 32-bit range");
  return static_cast<Count>(v);
}

std::vector<std::string> read_id_file(const fs::path& path, std::size_t expected) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open id file " + path.string());
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ids.push_back(line);
  }
  while (!ids.empty() && ids.back().empty()) ids.pop_back();
  if (ids.size() != expected)
    throw ParseError(path.string(), ids.size(),
                     "expected " + std::to_string(expected) + " ids, found " +
                         std::to_string(ids.size()));
  return ids;
}

AnyMatrix read_matrix_market(const fs::path& path) {
  const std::string name = path.string();
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file " + name);

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(name, 1, "empty file");
  ++line_no;
  auto banner = tokens(line);
  if (banner.size() != 5 || banner[0] != "%%MatrixMarket")
    throw ParseError(name, line_no, "missing %%MatrixMarket banner");
  if (lower(banner[1]) != "matrix" || lower(banner[2]) != "coordinate")
    throw ParseError(name, line_no, "only 'matrix coordinate' is supported");
  const std::string field = lower(banner[3]);
  if (field != "integer" && field != "real")
    throw ParseError(name, line_no, "field must be integer or real, got '" + field + "'");
  if (lower(banner[4]) != "general")
    throw ParseError(name, line_no, "only 'general' symmetry is supported");
  const bool integer = field == "integer";

  std::size_t n_rows = 0, n_cols = 0, n_entries = 0;
  bool have_size = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.starts_with('%') || blank(line)) continue;
    auto t = tokens(line);
    if (t.size() != 3 || !parse_int(t[0], n_rows) || !parse_int(t[1], n_cols) ||
        !parse_int(t[2], n_entries))
      throw ParseError(name, line_no, "malformed size line");
    have_size = true;
    break;
  }
  if (!have_size) throw ParseError(name, line_no, "missing size line");
  if (n_rows > std::numeric_limits<Index>::max() || n_cols > std::numeric_limits<Index>::max())
    throw ParseError(name, line_no, "dimensions exceed 32-bit index range");

  std::vector<Triplet<Count>> counts;
  std::vector<Triplet<double>> reals;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.starts_with('%') || blank(line)) continue;
    if (seen == n_entries) throw ParseError(name, line_no, "more entries than declared");
    auto t = tokens(line);
    std::size_t i = 0, j = 0;
    if (t.size() != 3 || !parse_int(t[0], i) || !parse_int(t[1], j))
      throw ParseError(name, line_no, "malformed entry line");
    if (i < 1 || i > n_rows || j < 1 || j > n_cols)
      throw ParseError(name, line_no, "coordinate out of range");
    const auto row = static_cast<Index>(i - 1);
    const auto col = static_cast<Index>(j - 1);
    if (integer) {
      long long v = 0;
      if (!parse_int(t[2], v)) throw ParseError(name, line_no, "malformed integer value");
      if (v < 0)
        throw DomainError(name + ":" + std::to_string(line_no) + ": negative count");
      counts.push_back({row, col, checked_count(static_cast<double>(v), name, line_no)});
    } else {
      double v = 0;
      if (!parse_double(t[2], v)) throw ParseError(name, line_no, "malformed real value");
      if (v < 0) throw DomainError(name + ":" + std::to_string(line_no) + ": negative value");
      reals.push_back({row, col, v});
    }
    ++seen;
  }
  if (seen != n_entries)
    throw ParseError(name, line_no,
                     "declared " + std::to_string(n_entries) + " entries, found " +
                         std::to_string(seen));

  auto genes_path = gene_sidecar(path);
  auto cells_path = cell_sidecar(path);
  auto gene_ids = fs::exists(genes_path) ? read_id_file(genes_path, n_rows) : make_ids("G", n_rows);
  auto cell_ids = fs::exists(cells_path) ? read_id_file(cells_path, n_cols) : make_ids("C", n_cols);

  try {
    if (integer)
      return from_triplets(n_rows, n_cols, std::move(counts), std::move(gene_ids),
                           std::move(cell_ids));
    return from_triplets(n_rows, n_cols, std::move(reals), std::move(gene_ids),
                         std::move(cell_ids));
  } catch (const DomainError& e) {
    throw DomainError(name + ": " + e.what());
  }
}

AnyMatrix read_dense_csv(const fs::path& path) {
  const std::string name = path.string();
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file " + name);

  std::string line;
  std::vector<std::string> fields;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(name, 1, "empty file");
  if (!csv::split(line, fields) || fields.empty())
    throw ParseError(name, line_no, "malformed header");
  std::vector<std::string> cell_ids(fields.begin() + 1, fields.end());
  const std::size_t n_cells = cell_ids.size();

  std::vector<std::string> gene_ids;
  std::vector<std::vector<Entry<double>>> columns(n_cells);
  bool all_integral = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (!csv::split(line, fields)) throw ParseError(name, line_no, "unterminated quote");
    if (fields.size() != n_cells + 1)
      throw ParseError(name, line_no,
                       "expected " + std::to_string(n_cells + 1) + " fields, found " +
                           std::to_string(fields.size()));
    const auto row = static_cast<Index>(gene_ids.size());
    gene_ids.push_back(fields[0]);
    for (std::size_t c = 0; c < n_cells; ++c) {
      double v = 0;
      if (!parse_double(fields[c + 1], v))
        throw ParseError(name, line_no, "malformed value '" + fields[c + 1] + "'");
      if (v < 0) throw DomainError(name + ":" + std::to_string(line_no) + ": negative value");
      if (!looks_integral(fields[c + 1])) all_integral = false;
      if (v != 0) columns[c].push_back({row, v});
    }
  }

  try {
    if (all_integral) {
      MatrixBuilder<Count> builder(gene_ids.size());
      std::vector<Entry<Count>> col;
      for (const auto& column : columns) {
        col.clear();
        for (const auto& e : column) col.push_back({e.row, checked_count(e.value, name, 0)});
        builder.push_column(col);
      }
      return std::move(builder).build(std::move(gene_ids), std::move(cell_ids));
    }
    MatrixBuilder<double> builder(gene_ids.size());
    for (const auto& column : columns) builder.push_column(column);
    return std::move(builder).build(std::move(gene_ids), std::move(cell_ids));
  } catch (const DomainError& e) {
    throw DomainError(name + ": " + e.what());
  }
}

std::string format_value(Count v) { return std::to_string(v); }
std::string format_value(double v) { return format_real(v); }

void write_ids(const fs::path& path, const std::vector<std::string>& ids) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& id : ids) out << id << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

template <typename T>
void write_impl(const SparseMatrix<T>& m, const fs::path& path, MatrixFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  std::string buf;
  if (format == MatrixFormat::MatrixMarket) {
    buf += "%%MatrixMarket matrix coordinate ";
    buf += std::is_integral_v<T> ? "integer" : "real";
    buf += " general\n";
    buf += std::to_string(m.n_genes()) + " " + std::to_string(m.n_cells()) + " " +
           std::to_string(m.nnz()) + "\n";
    for (std::size_t c = 0; c < m.n_cells(); ++c) {
      auto rows = m.col_rows(c);
      auto vals = m.col_values(c);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        buf += std::to_string(rows[k] + 1);
        buf += ' ';
        buf += std::to_string(c + 1);
        buf += ' ';
        buf += format_value(vals[k]);
        buf += '\n';
      }
      if (buf.size() > (1u << 20)) {
        out << buf;
        buf.clear();
      }
    }
    out << buf;
    if (!out) throw IoError("write failed for " + path.string());
    out.close();
    write_ids(gene_sidecar(path), m.gene_ids());
    write_ids(cell_sidecar(path), m.cell_ids());
    return;
  }

  std::vector<std::string> header{"gene"};
  header.insert(header.end(), m.cell_ids().begin(), m.cell_ids().end());
  buf += csv::join(header) + "\n";
  auto rows = row_major(m);
  for (std::size_t g = 0; g < m.n_genes(); ++g) {
    buf += csv::quote(m.gene_ids()[g]);
    auto cols = rows.row_cols(g);
    auto vals = rows.row_values(g);
    std::size_t k = 0;
    for (std::size_t c = 0; c < m.n_cells(); ++c) {
      buf += ',';
      if (k < cols.size() && cols[k] == c) {
        buf += format_value(vals[k]);
        ++k;
      } else {
        buf += '0';
      }
    }
    buf += '\n';
    if (buf.size() > (1u << 20)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

fs::path gene_sidecar(const fs::path& path) { return sidecar(path, ".genes.txt"); }
fs::path cell_sidecar(const fs::path& path) { return sidecar(path, ".cells.txt"); }

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

AnyMatrix read_matrix(const fs::path& path, MatrixFormat format) {
  if (!fs::exists(path)) throw IoError("no such file: " + path.string());
  return format == MatrixFormat::MatrixMarket ? read_matrix_market(path) : read_dense_csv(path);
}

AnyMatrix read_matrix(const fs::path& path) { return read_matrix(path, format_from_path(path)); }

void write_matrix(const CountMatrix& m, const fs::path& path, MatrixFormat format) {
  write_impl(m, path, format);
}

void write_matrix(const RealMatrix& m, const fs::path& path, MatrixFormat format) {
  write_impl(m, path, format);
}

void write_matrix(const AnyMatrix& m, const fs::path& path, MatrixFormat format) {
  std::visit([&](const auto& mat) { write_impl(mat, path, format); }, m);
}

}  // namespace scbench
