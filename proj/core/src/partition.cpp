#include "scbench/partition.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "scbench/csv.hpp"
#include "scbench/error.hpp"

namespace scbench {

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) return;
  const int max_label = *std::max_element(labels_.begin(), labels_.end());
  if (*std::min_element(labels_.begin(), labels_.end()) < 0)
    throw DomainError("partition labels must be nonnegative");
  std::vector<bool> used(static_cast<std::size_t>(max_label) + 1, false);
  for (int l : labels_) used[static_cast<std::size_t>(l)] = true;
  if (std::find(used.begin(), used.end(), false) != used.end())
    throw DomainError("partition labels must use every id in 0.." + std::to_string(max_label));
  n_clusters_ = used.size();
}

Partition Partition::from_any(std::span<const int> labels) {
  std::unordered_map<int, int> ids;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) {
    auto [it, inserted] = ids.try_emplace(l, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  return Partition(std::move(out));
}

Partition Partition::from_strings(std::span<const std::string> labels) {
  std::unordered_map<std::string, int> ids;
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& l : labels) {
    auto [it, inserted] = ids.try_emplace(l, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  return Partition(std::move(out));
}


void write_labels_csv(const std::filesystem::path& path, std::span<const std::string> cell_ids,
                      const Partition& labels) {
  if (cell_ids.size() != labels.size())
    throw DomainError("label count " + std::to_string(labels.size()) + " != cell count " +
                      std::to_string(cell_ids.size()));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "cell_id,cluster\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << csv::quote(cell_ids[i]) << ',' << labels[i] << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

LabeledCells read_labels_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open labels file " + path.string());
  std::string line;
  std::vector<std::string> fields;
  std::size_t line_no = 0;
  LabeledCells out;
  std::vector<std::string> clusters;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (!csv::split(line, fields) || fields.size() != 2)
      throw ParseError(path.string(), line_no, "expected two fields: cell_id,cluster");
    if (line_no == 1 && fields[0] == "cell_id") continue;
    out.cell_ids.push_back(fields[0]);
    clusters.push_back(fields[1]);
  }
  out.labels = Partition::from_strings(clusters);
  return out;
}

Partition align_labels(const LabeledCells& labeled, std::span<const std::string> cell_ids) {
  if (labeled.cell_ids.size() != cell_ids.size())
    throw DomainError("labels cover " + std::to_string(labeled.cell_ids.size()) +
                      " cells, matrix has " + std::to_string(cell_ids.size()));
  std::unordered_map<std::string, int> by_id;
  for (std::size_t i = 0; i < labeled.cell_ids.size(); ++i)
    by_id.emplace(labeled.cell_ids[i], labeled.labels[i]);
  std::vector<int> out;
  out.reserve(cell_ids.size());
  for (const auto& id : cell_ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw DomainError("no label for cell '" + id + "'");
    out.push_back(it->second);
  }
  return Partition::from_any(out);
}

}  // namespace scbench
