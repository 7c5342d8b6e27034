#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scbench/matrix.hpp"
#include "scbench/partition.hpp"

namespace scbench::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("scbench-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline CountMatrix random_counts(std::size_t genes, std::size_t cells, double density,
                                 std::uint32_t max_value, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<std::uint32_t> value(1, max_value);
  MatrixBuilder<Count> b(genes);
  std::vector<Count> col(genes);
  for (std::size_t c = 0; c < cells; ++c) {
    for (auto& v : col) v = keep(rng) ? value(rng) : 0;
    b.push_dense_column(col);
  }
  return std::move(b).build();
}

inline RealMatrix random_reals(std::size_t genes, std::size_t cells, double density,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(density);
  std::lognormal_distribution<double> value(0.0, 1.5);
  MatrixBuilder<double> b(genes);
  std::vector<double> col(genes);
  for (std::size_t c = 0; c < cells; ++c) {
    for (auto& v : col) v = keep(rng) ? value(rng) : 0.0;
    b.push_dense_column(col);
  }
  return std::move(b).build();
}

/// Genes x cells from a row-major dense table.
template <typename T>
SparseMatrix<T> from_rows(const std::vector<std::vector<T>>& rows) {
  const std::size_t genes = rows.size();
  const std::size_t cells = genes ? rows[0].size() : 0;
  MatrixBuilder<T> b(genes);
  std::vector<T> col(genes);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t g = 0; g < genes; ++g) col[g] = rows[g][c];
    b.push_dense_column(col);
  }
  return std::move(b).build();
}

inline Partition random_partition(std::size_t n, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::vector<int> raw(n);
  for (auto& v : raw) v = pick(rng);
  return Partition::from_any(raw);
}

/// Two Gaussian blobs in the plane, far apart relative to their spread.
inline Eigen::MatrixXd two_blobs(std::size_t per_blob, std::uint64_t seed,
                                 std::vector<int>* truth = nullptr) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.3);
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(2 * per_blob), 2);
  if (truth) truth->clear();
  for (std::size_t i = 0; i < 2 * per_blob; ++i) {
    const int blob = static_cast<int>(i % 2);
    const double cx = blob ? 20.0 : 0.0;
    pts(static_cast<Eigen::Index>(i), 0) = cx + noise(rng);
    pts(static_cast<Eigen::Index>(i), 1) = noise(rng);
    if (truth) truth->push_back(blob);
  }
  return pts;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace scbench::testing
