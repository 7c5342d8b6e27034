#include "scbench/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "scbench/parallel.hpp"

namespace scbench {

namespace {

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw DomainError("vector lengths differ: " + std::to_string(x.size()) + " vs " +
                      std::to_string(y.size()));
  if (x.size() < 2) throw DomainError("correlation needs at least two points");
}

/// Dense vectors along `axis`: rows of length n_cells (genes) or columns.
std::vector<std::vector<double>> dense_vectors(const RealMatrix& m, Axis axis) {
  if (axis == Axis::Cell) {
    std::vector<std::vector<double>> out(m.n_cells());
    for (std::size_t c = 0; c < m.n_cells(); ++c) out[c] = m.dense_column(c);
    return out;
  }
  std::vector<std::vector<double>> out(m.n_genes(), std::vector<double>(m.n_cells(), 0.0));
  for (std::size_t c = 0; c < m.n_cells(); ++c) {
    auto rows = m.col_rows(c);
    auto vals = m.col_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k) out[rows[k]][c] = vals[k];
  }
  return out;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  if (constant(x) || constant(y)) return std::nullopt;
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> r_squared(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  if (constant(y)) return std::nullopt;
  if (constant(x)) return 0.0;
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / syy;
  const double intercept = mx - slope * my;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double fitted = intercept + slope * y[i];
    ss_res += (x[i] - fitted) * (x[i] - fitted);
    ss_tot += (x[i] - mx) * (x[i] - mx);
  }
  return std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

std::vector<double> CorrelationVector::defined() const {
  std::vector<double> out;
  out.reserve(values.size() - n_undefined);
  for (const auto& v : values)
    if (v) out.push_back(*v);
  return out;
}

CorrelationVector matrix_correlations(const RealMatrix& a, const RealMatrix& b, Axis axis,
                                      const Preprocess& pre, unsigned workers) {
  if (a.n_genes() != b.n_genes() || a.n_cells() != b.n_cells())
    throw DomainError("dimension mismatch: " + std::to_string(a.n_genes()) + "x" +
                      std::to_string(a.n_cells()) + " vs " + std::to_string(b.n_genes()) +
                      "x" + std::to_string(b.n_cells()));
  const auto va = dense_vectors(preprocess(a, pre), axis);
  const auto vb = dense_vectors(preprocess(b, pre), axis);
  CorrelationVector out;
  out.values.resize(va.size());
  parallel_for(va.size(), workers, [&](std::size_t i) { out.values[i] = pearson(va[i], vb[i]); });
  out.n_undefined = static_cast<std::size_t>(
      std::count_if(out.values.begin(), out.values.end(), [](const auto& v) { return !v; }));
  return out;
}

std::size_t CorrelationMatrix::n_valid() const {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), true));
}

CorrelationMatrix correlation_matrix(const RealMatrix& m, Axis axis, const Preprocess& pre,
                                     unsigned workers) {
  const auto vectors = dense_vectors(preprocess(m, pre), axis);
  const std::size_t n = vectors.size();
  const std::size_t len = axis == Axis::Gene ? m.n_cells() : m.n_genes();
  if (len < 2) throw DomainError("correlation needs vectors of length >= 2");

  CorrelationMatrix out;
  out.n = n;
  out.valid.assign(n, false);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(len),
                                            static_cast<Eigen::Index>(n));
  parallel_for(n, workers, [&](std::size_t i) {
    const auto& v = vectors[i];
    if (constant(v)) return;
    const double mu = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - mu) * (x - mu);
    if (ss == 0.0) return;
    const double inv = 1.0 / std::sqrt(ss);
    auto col = z.col(static_cast<Eigen::Index>(i));
    for (std::size_t k = 0; k < len; ++k) col(static_cast<Eigen::Index>(k)) = (v[k] - mu) * inv;
    out.valid[i] = true;
  });
  if (out.n_valid() < 2) throw DomainError("fewer than two non-constant vectors");

  const Eigen::MatrixXd r = z.transpose() * z;
  out.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!out.valid[i]) continue;
    out.values[i * n + i] = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      if (!out.valid[j]) continue;
      const double v = std::clamp(r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                                  -1.0, 1.0);
      out.values[i * n + j] = v;
      out.values[j * n + i] = v;
    }
  }
  return out;
}

double correlation_matrix_distance(const CorrelationMatrix& r1, const CorrelationMatrix& r2) {
  if (r1.n != r2.n)
    throw DomainError("correlation matrices differ in size: " + std::to_string(r1.n) + " vs " +
                      std::to_string(r2.n));
  std::vector<std::size_t> common;
  for (std::size_t i = 0; i < r1.n; ++i)
    if (r1.valid[i] && r2.valid[i]) common.push_back(i);
  if (common.size() < 2) throw DomainError("fewer than two commonly valid indices");

  double trace = 0.0, n1 = 0.0, n2 = 0.0;
  for (std::size_t i : common) {
    for (std::size_t j : common) {
      const double a = r1(i, j);
      const double b = r2(i, j);
      trace += a * b;
      n1 += a * a;
      n2 += b * b;
    }
  }
  return std::clamp(1.0 - trace / (std::sqrt(n1) * std::sqrt(n2)), 0.0, 1.0);
}

Quantiles summarize(std::vector<double> values) {
  Quantiles q;
  q.count = values.size();
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  q.min = values.front();
  q.max = values.back();
  q.q1 = quantile_sorted(values, 0.25);
  q.median = quantile_sorted(values, 0.5);
  q.q3 = quantile_sorted(values, 0.75);
  double s = 0.0;
  for (double v : values) s += v;
  q.mean = s / static_cast<double>(values.size());
  return q;
}

}  // namespace scbench
