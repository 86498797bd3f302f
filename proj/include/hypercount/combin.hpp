#ifndef HYPERCOUNT_COMBIN_HPP
#define HYPERCOUNT_COMBIN_HPP

#include <cstdint>
#include <vector>

#include "hypercount/common.hpp"

namespace hypercount {

// C(n, k) in 64 bits; throws on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

std::uint64_t factorial(unsigned n);

// Lexicographic rank of a sorted k-subset of {0..n-1} and its inverse
// (combinatorial number system, smallest element most significant).
std::uint64_t subset_rank(int n, const std::vector<int>& subset);
std::vector<int> subset_unrank(int n, int k, std::uint64_t rank);

// Visits sorted k-subsets of {0..n-1} in lexicographic order; the callback
// may return false to stop early.
template <class F>
void for_each_subset(int n, int k, F&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    if (!fn(static_cast<const std::vector<int>&>(c))) return;
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace hypercount

#endif
