#include "scbench/stats_comparison.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "scbench/correlation.hpp"
#include "scbench/csv.hpp"
#include "scbench/matrix_io.hpp"

namespace scbench {

std::vector<std::string> matched_gene_ids(const RealMatrix& a, const RealMatrix& b) {
  std::unordered_map<std::string, std::size_t> in_b;
  for (std::size_t g = 0; g < b.n_genes(); ++g) in_b.emplace(b.gene_ids()[g], g);
  std::vector<std::string> out;
  for (const auto& id : a.gene_ids())
    if (in_b.count(id)) out.push_back(id);
  return out;
}

StatsComparison stats_comparison(const RealMatrix& original, const RealMatrix& other,
                                 std::span<const std::string> genes,
                                 const std::optional<Preprocess>& pre) {
  if (genes.empty()) throw DomainError("no matched genes to compare");
  auto index_of = [](const RealMatrix& m) {
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t g = 0; g < m.n_genes(); ++g) idx.emplace(m.gene_ids()[g], g);
    return idx;
  };
  const auto idx_orig = index_of(original);
  const auto idx_other = index_of(other);

  const auto s_orig = pre ? gene_summary(preprocess(original, *pre)) : gene_summary(original);
  const auto s_other = pre ? gene_summary(preprocess(other, *pre)) : gene_summary(other);

  StatsComparison out;
  out.preprocessed = pre.has_value();
  out.records.reserve(genes.size());
  for (const auto& id : genes) {
    auto a = idx_orig.find(id);
    auto b = idx_other.find(id);
    if (a == idx_orig.end() || b == idx_other.end())
      throw DomainError("gene '" + id + "' missing from one of the matrices");
    out.records.push_back({id, s_orig.mean[a->second], s_other.mean[b->second],
                           s_orig.sd[a->second], s_other.sd[b->second],
                           s_orig.zero_fraction[a->second], s_other.zero_fraction[b->second]});
  }

  if (out.records.size() >= 2) {
    auto paired = [&](auto field_orig, auto field_other) {
      std::vector<double> x, y;
      for (const auto& r : out.records) {
        x.push_back(r.*field_orig);
        y.push_back(r.*field_other);
      }
      return pearson(x, y);
    };
    out.r_mean = paired(&StatsRecord::mean_orig, &StatsRecord::mean_other);
    out.r_sd = paired(&StatsRecord::sd_orig, &StatsRecord::sd_other);
    out.r_zero_fraction = paired(&StatsRecord::zf_orig, &StatsRecord::zf_other);
  }
  return out;
}

void write_stats_csv(const StatsComparison& cmp, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "gene_id,mean_orig,mean_other,sd_orig,sd_other,zf_orig,zf_other\n";
  for (const auto& r : cmp.records) {
    out << csv::quote(r.gene_id) << ',' << format_real(r.mean_orig) << ','
        << format_real(r.mean_other) << ',' << format_real(r.sd_orig) << ','
        << format_real(r.sd_other) << ',' << format_real(r.zf_orig) << ','
        << format_real(r.zf_other) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

namespace {

struct Panel {
  const char* title;
  double StatsRecord::*x;
  double StatsRecord::*y;
  bool log_scale;
};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_stats_svg(const StatsComparison& cmp, const std::filesystem::path& path) {
  constexpr double kSize = 260, kPad = 40, kGap = 20;
  const Panel panels[] = {
      {"log10(1 + mean)", &StatsRecord::mean_orig, &StatsRecord::mean_other, true},
      {"log10(1 + sd)", &StatsRecord::sd_orig, &StatsRecord::sd_other, true},
      {"zero fraction", &StatsRecord::zf_orig, &StatsRecord::zf_other, false},
  };
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const double width = 3 * (kSize + 2 * kPad) + 2 * kGap;
  const double height = kSize + 2 * kPad;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width) << "\" height=\""
      << fixed(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t p = 0; p < 3; ++p) {
    const auto& panel = panels[p];
    auto tx = [&](double v) { return panel.log_scale ? std::log10(1.0 + v) : v; };
    double hi = 0.0;
    for (const auto& r : cmp.records) hi = std::max({hi, tx(r.*panel.x), tx(r.*panel.y)});
    if (hi <= 0.0) hi = 1.0;
    const double x0 = static_cast<double>(p) * (kSize + 2 * kPad + kGap) + kPad;
    const double y0 = kPad + kSize;
    out << "<g>\n<rect x=\"" << fixed(x0) << "\" y=\"" << fixed(kPad) << "\" width=\""
        << fixed(kSize) << "\" height=\"" << fixed(kSize)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fixed(x0) << "\" y1=\"" << fixed(y0) << "\" x2=\""
        << fixed(x0 + kSize) << "\" y2=\"" << fixed(kPad) << "\" stroke=\"grey\"/>\n";
    out << "<text x=\"" << fixed(x0) << "\" y=\"" << fixed(kPad - 8) << "\">" << panel.title
        << " (max " << fixed(hi) << ")</text>\n";
    out << "<text x=\"" << fixed(x0 + kSize / 2 - 20) << "\" y=\"" << fixed(y0 + 25)
        << "\">original</text>\n";
    out << "<text x=\"" << fixed(x0 - 30) << "\" y=\"" << fixed(kPad + kSize / 2)
        << "\" transform=\"rotate(-90 " << fixed(x0 - 30) << ' ' << fixed(kPad + kSize / 2)
        << ")\">other</text>\n";
    for (const auto& r : cmp.records) {
      const double cx = x0 + tx(r.*panel.x) / hi * kSize;
      const double cy = y0 - tx(r.*panel.y) / hi * kSize;
      out << "<circle cx=\"" << fixed(cx) << "\" cy=\"" << fixed(cy)
          << "\" r=\"1.5\" fill=\"steelblue\" fill-opacity=\"0.5\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace scbench
