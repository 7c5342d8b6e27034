#pragma once

#include <cstdint>
#include <vector>

#include "scbench/partition.hpp"

namespace scbench {

/// Pair counts of two partitions, from their contingency table.
struct PairCounts {
  std::uint64_t total_pairs = 0;  ///< C(n, 2)
  std::uint64_t both = 0;         ///< sum_ij C(n_ij, 2): co-clustered in both
  std::uint64_t in_p = 0;         ///< sum_i C(a_i, 2): co-clustered in p
  std::uint64_t in_q = 0;         ///< sum_j C(b_j, 2): co-clustered in q
  bool identical = false;         ///< same partition up to relabeling
};

/// Throws DomainError on length mismatch or fewer than two cells.
PairCounts pair_counts(const Partition& p, const Partition& q);

/// Hubert-Arabie adjusted Rand index. When the expected and maximum index
/// coincide (both partitions trivial the same way), returns 1 for identical
/// partitions and 0 otherwise.
double adjusted_rand_index(const Partition& p, const Partition& q);

/// Pair-counting Jaccard n11 / (n11 + n10 + n01); 1 when no pair is
/// co-clustered in either partition.
double jaccard_pairs(const Partition& p, const Partition& q);

}  // namespace scbench
