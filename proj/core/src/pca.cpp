#include "scbench/pca.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "scbench/random.hpp"

namespace scbench {

namespace {

using Idx = Eigen::Index;

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

}  // namespace

Eigen::MatrixXd pca_design(const RealMatrix& m, const Preprocess& pre, bool scale_genes) {
  const RealMatrix prepped = preprocess(m, pre);
  const auto n = static_cast<Idx>(m.n_cells());
  const auto p = static_cast<Idx>(m.n_genes());
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, p);
  for (std::size_t c = 0; c < prepped.n_cells(); ++c) {
    auto rows = prepped.col_rows(c);
    auto vals = prepped.col_values(c);
    for (std::size_t k = 0; k < rows.size(); ++k)
      x(static_cast<Idx>(c), static_cast<Idx>(rows[k])) = vals[k];
  }
  bool any_varying = false;
  for (Idx g = 0; g < p; ++g) {
    auto col = x.col(g);
    const bool varying = (col.array() != col(0)).any();
    col.array() -= col.mean();
    if (!varying) {
      col.setZero();
      continue;
    }
    any_varying = true;
    if (scale_genes) {
      const double sd = std::sqrt(col.squaredNorm() / static_cast<double>(std::max<Idx>(n - 1, 1)));
      if (sd > 0) col /= sd;
    }
  }
  if (!any_varying) throw DomainError("PCA input is constant across cells");
  return x;
}

PcaResult pca_centered(const Eigen::MatrixXd& x, const PcaOptions& options) {
  const Idx n = x.rows();
  const Idx p = x.cols();
  const auto k = static_cast<Idx>(options.n_components);
  if (k < 1 || k > std::min(n, p))
    throw DomainError("n_components = " + std::to_string(k) + " must lie in [1, min(" +
                      std::to_string(p) + " genes, " + std::to_string(n) + " cells)]");
  if (n < 2) throw DomainError("PCA needs at least two cells");
  if (x.squaredNorm() == 0.0) throw DomainError("PCA input is constant across cells");

  const Idx l = std::min<Idx>(k + static_cast<Idx>(options.oversample), std::min(n, p));
  auto rng = substream(options.seed, Stream::Pca, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd omega(p, l);
  for (Idx j = 0; j < l; ++j)
    for (Idx i = 0; i < p; ++i) omega(i, j) = normal(rng);

  Eigen::MatrixXd q = orthonormal_basis(x * omega);
  Eigen::VectorXd previous;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd;
  PcaResult out;
  for (std::size_t it = 0;; ++it) {
    const Eigen::MatrixXd b = q.transpose() * x;  // l x p
    svd.compute(b, Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues().head(k);
    out.iterations = it + 1;
    const bool exact = l == std::min(n, p);
    if (exact || it + 1 >= options.max_iter) break;
    if (previous.size() == k &&
        (sv - previous).cwiseAbs().maxCoeff() <= options.tol * std::max(sv(0), 1e-300))
      break;
    previous = sv;
    const Eigen::MatrixXd z = orthonormal_basis(x.transpose() * q);
    q = orthonormal_basis(x * z);
  }

  out.loadings = svd.matrixV().leftCols(k);
  for (Idx j = 0; j < k; ++j) {
    auto col = out.loadings.col(j);
    Idx arg = 0;
    double best = -1.0;
    for (Idx i = 0; i < p; ++i) {
      if (std::abs(col(i)) > best) {
        best = std::abs(col(i));
        arg = i;
      }
    }
    if (col(arg) < 0) col = -col;
  }
  out.scores = x * out.loadings;
  out.explained_variance.resize(static_cast<std::size_t>(k));
  const Eigen::VectorXd sv = svd.singularValues();
  for (Idx j = 0; j < k; ++j)
    out.explained_variance[static_cast<std::size_t>(j)] = sv(j) * sv(j) / static_cast<double>(n - 1);
  return out;
}

PcaResult pca(const RealMatrix& m, const PcaOptions& options) {
  return pca_centered(pca_design(m, options.pre, options.scale_genes), options);
}

}  // namespace scbench
