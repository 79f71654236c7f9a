#pragma once

#include <cstddef>
#include <span>

namespace polykin {

inline constexpr std::size_t kPairwiseBlock = 16;

/// Cascade summation of term(0) + ... + term(n-1). The reduction tree depends
/// only on n, so results are reproducible regardless of thread count.
template <class Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  const std::size_t n = end - begin;
  if (n <= kPairwiseBlock) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = begin + n / 2;
  return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

inline double pairwise_sum(std::span<const double> xs) {
  return pairwise_sum(0, xs.size(), [xs](std::size_t i) { return xs[i]; });
}

} // namespace polykin
