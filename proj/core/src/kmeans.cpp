#include "scbench/kmeans.hpp"

#include <limits>
#include <random>
#include <string>

#include "scbench/error.hpp"
#include "scbench/parallel.hpp"
#include "scbench/random.hpp"

namespace scbench {

namespace {

using Idx = Eigen::Index;

double sq_dist(const Eigen::MatrixXd& points, Idx i, const Eigen::MatrixXd& centroids, Idx j) {
  return (points.row(i) - centroids.row(j)).squaredNorm();
}

Eigen::MatrixXd plus_plus_init(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                               std::uint64_t restart) {
  const Idx n = points.rows();
  auto rng = substream(seed, Stream::KMeans, restart);
  Eigen::MatrixXd centroids(static_cast<Idx>(k), points.cols());
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);

  std::uniform_int_distribution<Idx> first(0, n - 1);
  Idx pick = first(rng);
  centroids.row(0) = points.row(pick);
  chosen[static_cast<std::size_t>(pick)] = true;

  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Idx i = 0; i < n; ++i) d2[static_cast<std::size_t>(i)] = sq_dist(points, i, centroids, 0);

  for (std::size_t j = 1; j < k; ++j) {
    double total = 0.0;
    for (double d : d2) total += d;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      const double target = u(rng);
      double acc = 0.0;
      pick = -1;
      for (Idx i = 0; i < n; ++i) {
        const double d = d2[static_cast<std::size_t>(i)];
        if (d <= 0.0) continue;
        acc += d;
        pick = i;
        if (acc >= target) break;
      }
    } else {
      pick = 0;
      while (chosen[static_cast<std::size_t>(pick)]) ++pick;
    }
    chosen[static_cast<std::size_t>(pick)] = true;
    centroids.row(static_cast<Idx>(j)) = points.row(pick);
    for (Idx i = 0; i < n; ++i) {
      auto& d = d2[static_cast<std::size_t>(i)];
      d = std::min(d, sq_dist(points, i, centroids, static_cast<Idx>(j)));
    }
  }
  return centroids;
}

/// Centroid update; empty clusters take the point farthest from its centroid.
void update_centroids(const Eigen::MatrixXd& points, std::vector<int>& labels,
                      Eigen::MatrixXd& centroids) {
  const auto k = static_cast<std::size_t>(centroids.rows());
  auto recompute = [&](std::vector<std::size_t>& sizes) {
    centroids.setZero();
    sizes.assign(k, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      centroids.row(labels[i]) += points.row(static_cast<Idx>(i));
      ++sizes[static_cast<std::size_t>(labels[i])];
    }
    for (std::size_t j = 0; j < k; ++j)
      if (sizes[j] > 0) centroids.row(static_cast<Idx>(j)) /= static_cast<double>(sizes[j]);
  };
  std::vector<std::size_t> sizes;
  recompute(sizes);
  for (std::size_t j = 0; j < k; ++j) {
    if (sizes[j] > 0) continue;
    Idx far = -1;
    double best = -1.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto owner = static_cast<std::size_t>(labels[i]);
      if (sizes[owner] < 2) continue;
      const double d = sq_dist(points, static_cast<Idx>(i), centroids, static_cast<Idx>(owner));
      if (d > best) {
        best = d;
        far = static_cast<Idx>(i);
      }
    }
    if (far < 0) throw DomainError("k-means cannot fill an empty cluster");
    labels[static_cast<std::size_t>(far)] = static_cast<int>(j);
    recompute(sizes);
  }
}

}  // namespace

std::vector<int> assign_nearest(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                                unsigned workers) {
  std::vector<int> labels(static_cast<std::size_t>(points.rows()));
  parallel_for(labels.size(), workers, [&](std::size_t i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Idx j = 0; j < centroids.rows(); ++j) {
      const double d = sq_dist(points, static_cast<Idx>(i), centroids, j);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(j);
      }
    }
    labels[i] = best;
  });
  return labels;
}

double inertia(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
               const std::vector<int>& labels) {
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    total += sq_dist(points, static_cast<Idx>(i), centroids, labels[i]);
  return total;
}

KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter, unsigned workers, std::size_t n_init) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (k < 1 || k > n)
    throw DomainError("k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");

  KMeansResult best;
  bool have_best = false;
  const std::size_t iters = std::max<std::size_t>(max_iter, 1);
  for (std::size_t restart = 0; restart < std::max<std::size_t>(n_init, 1); ++restart) {
    KMeansResult out;
    out.centroids = plus_plus_init(points, k, seed, restart);
    std::vector<int> labels = assign_nearest(points, out.centroids, workers);
    for (std::size_t it = 0; it < iters; ++it) {
      update_centroids(points, labels, out.centroids);
      out.inertia_history.push_back(inertia(points, out.centroids, labels));
      out.iterations = it + 1;
      auto next = assign_nearest(points, out.centroids, workers);
      if (next == labels) {
        out.converged = true;
        break;
      }
      if (it + 1 == iters) break;
      labels = std::move(next);
    }
    out.labels = Partition(std::move(labels));
    if (!have_best || out.inertia() < best.inertia()) {
      best = std::move(out);
      have_best = true;
    }
  }
  return best;
}

}  // namespace scbench
