#include "scbench/hclust.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "scbench/error.hpp"

namespace scbench {

namespace {

class Condensed {
 public:
  explicit Condensed(std::size_t n) : n_(n), d_(n * (n - 1) / 2) {}

  double& operator()(std::size_t i, std::size_t j) { return d_[offset(i, j)]; }
  double operator()(std::size_t i, std::size_t j) const { return d_[offset(i, j)]; }

 private:
  std::size_t offset(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }

  std::size_t n_;
  std::vector<double> d_;
};

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

std::vector<Merge> ward_linkage(const Eigen::MatrixXd& points) {
  const auto n = static_cast<std::size_t>(points.rows());
  std::vector<Merge> merges;
  if (n < 2) return merges;
  merges.reserve(n - 1);

  Condensed dist(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dist(i, j) = (points.row(static_cast<Eigen::Index>(i)) -
                    points.row(static_cast<Eigen::Index>(j)))
                       .squaredNorm();

  std::vector<bool> active(n, true);
  std::vector<std::size_t> size(n, 1);
  std::vector<std::size_t> nn(n, kNone);
  std::vector<double> nn_dist(n, kInf);

  auto rescan = [&](std::size_t i) {
    nn[i] = kNone;
    nn_dist[i] = kInf;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!active[j]) continue;
      if (dist(i, j) < nn_dist[i]) {
        nn_dist[i] = dist(i, j);
        nn[i] = j;
      }
    }
  };
  for (std::size_t i = 0; i + 1 < n; ++i) rescan(i);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t a = kNone;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || nn[i] == kNone) continue;
      if (a == kNone || nn_dist[i] < nn_dist[a]) a = i;
    }
    const std::size_t b = nn[a];
    const double d_ab = nn_dist[a];
    const double na = static_cast<double>(size[a]);
    const double nb = static_cast<double>(size[b]);

    for (std::size_t l = 0; l < n; ++l) {
      if (!active[l] || l == a || l == b) continue;
      const double nl = static_cast<double>(size[l]);
      dist(a, l) = ((na + nl) * dist(a, l) + (nb + nl) * dist(b, l) - nl * d_ab) / (na + nb + nl);
    }
    size[a] += size[b];
    active[b] = false;
    merges.push_back({a, b, 0.5 * d_ab, size[a]});

    rescan(a);
    for (std::size_t l = 0; l < n; ++l) {
      if (!active[l] || l == a) continue;
      if (nn[l] == a || nn[l] == b) {
        rescan(l);
      } else if (l < a && (dist(l, a) < nn_dist[l] || (dist(l, a) == nn_dist[l] && a < nn[l]))) {
        nn_dist[l] = dist(l, a);
        nn[l] = a;
      }
    }
  }
  return merges;
}

Partition cut_tree(std::size_t n_points, const std::vector<Merge>& merges, std::size_t k) {
  if (k < 1 || k > n_points)
    throw DomainError("k = " + std::to_string(k) + " must lie in [1, " +
                      std::to_string(n_points) + "]");
  if (merges.size() + 1 < n_points && n_points - k > merges.size())
    throw DomainError("merge sequence too short for k = " + std::to_string(k));
  std::vector<std::size_t> parent(n_points);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t s = 0; s < n_points - k; ++s) parent[find(merges[s].b)] = find(merges[s].a);

  std::vector<int> labels(n_points);
  std::vector<int> label_of_root(n_points, -1);
  int next = 0;
  for (std::size_t i = 0; i < n_points; ++i) {
    const std::size_t r = find(i);
    if (label_of_root[r] < 0) label_of_root[r] = next++;
    labels[i] = label_of_root[r];
  }
  return Partition(std::move(labels));
}

Partition hclust_ward(const Eigen::MatrixXd& points, std::size_t k) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (k < 1 || k > n)
    throw DomainError("k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
  return cut_tree(n, ward_linkage(points), k);
}

}  // namespace scbench
