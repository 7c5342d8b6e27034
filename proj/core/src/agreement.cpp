#include "scbench/agreement.hpp"

#include <string>

#include "scbench/error.hpp"

namespace scbench {

namespace {

std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace

PairCounts pair_counts(const Partition& p, const Partition& q) {
  if (p.size() != q.size())
    throw DomainError("partition lengths differ: " + std::to_string(p.size()) + " vs " +
                      std::to_string(q.size()));
  if (p.size() < 2) throw DomainError("partitions need at least two cells");

  const std::size_t kp = p.n_clusters();
  const std::size_t kq = q.n_clusters();
  std::vector<std::uint64_t> table(kp * kq, 0);
  std::vector<std::uint64_t> rows(kp, 0), cols(kq, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto a = static_cast<std::size_t>(p[i]);
    const auto b = static_cast<std::size_t>(q[i]);
    ++table[a * kq + b];
    ++rows[a];
    ++cols[b];
  }

  PairCounts out;
  out.total_pairs = choose2(p.size());
  std::size_t occupied = 0;
  for (auto n : table) {
    out.both += choose2(n);
    if (n > 0) ++occupied;
  }
  for (auto n : rows) out.in_p += choose2(n);
  for (auto n : cols) out.in_q += choose2(n);
  out.identical = kp == kq && occupied == kp;
  return out;
}

double adjusted_rand_index(const Partition& p, const Partition& q) {
  const auto pc = pair_counts(p, q);
  // ARI = (S - A B / N) / ((A + B) / 2 - A B / N), multiplied through by 2N
  // so the hand cases come out exact.
  __extension__ typedef unsigned __int128 Wide;
  const Wide s = pc.both, a = pc.in_p, b = pc.in_q, n = pc.total_pairs;
  const Wide ab = a * b;
  const Wide sn2 = 2 * s * n;
  const Wide apbn = (a + b) * n;
  const long double num =
      sn2 >= 2 * ab ? static_cast<long double>(sn2 - 2 * ab) : -static_cast<long double>(2 * ab - sn2);
  const long double den = apbn >= 2 * ab ? static_cast<long double>(apbn - 2 * ab)
                                         : -static_cast<long double>(2 * ab - apbn);
  if (den == 0.0L) return pc.identical ? 1.0 : 0.0;
  return static_cast<double>(num / den);
}

double jaccard_pairs(const Partition& p, const Partition& q) {
  const auto pc = pair_counts(p, q);
  const std::uint64_t denom = pc.in_p + pc.in_q - pc.both;
  if (denom == 0) return 1.0;
  return static_cast<double>(pc.both) / static_cast<double>(denom);
}

}  // namespace scbench
