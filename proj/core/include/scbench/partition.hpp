#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace scbench {

/// Cluster assignment over cells; ids are 0..n_clusters-1, each used at least once.
class Partition {
 public:
  Partition() = default;

  /// Validates that ids are dense and all used; throws DomainError otherwise.
  explicit Partition(std::vector<int> labels);

  /// Relabels arbitrary ids to 0..k-1 in order of first appearance.
  static Partition from_any(std::span<const int> labels);
  static Partition from_strings(std::span<const std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t n_clusters() const noexcept { return n_clusters_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  int operator[](std::size_t i) const { return labels_[i]; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> labels_;
  std::size_t n_clusters_ = 0;
};


/// Labels CSV: header `cell_id,cluster`, one row per cell.
void write_labels_csv(const std::filesystem::path& path, std::span<const std::string> cell_ids,
                      const Partition& labels);

struct LabeledCells {
  std::vector<std::string> cell_ids;
  Partition labels;
};

/// Reads a labels CSV; cluster values may be any strings and are relabeled
/// 0..k-1 in order of first appearance.
LabeledCells read_labels_csv(const std::filesystem::path& path);

/// Reorders `labeled` to follow `cell_ids`; throws DomainError when the id
/// sets differ.
Partition align_labels(const LabeledCells& labeled, std::span<const std::string> cell_ids);

}  // namespace scbench
