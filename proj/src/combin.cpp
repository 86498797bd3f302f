#include "hypercount/combin.hpp"

#include <limits>

namespace hypercount {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    std::uint64_t q = r / i, rem = r % i;
    std::uint64_t t = n - k + i;
    if (q > std::numeric_limits<std::uint64_t>::max() / t)
      throw Error("binomial overflow");
    r = q * t + rem * t / i;
  }
  return r;
}

std::uint64_t factorial(unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 2; i <= n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / i)
      throw Error("factorial overflow");
    r *= i;
  }
  return r;
}

std::uint64_t subset_rank(int n, const std::vector<int>& subset) {
  const int k = static_cast<int>(subset.size());
  std::uint64_t rank = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < subset[i]; ++v)
      rank += binomial(static_cast<std::uint64_t>(n - 1 - v),
                       static_cast<std::uint64_t>(k - 1 - i));
    prev = subset[i];
  }
  return rank;
}

std::vector<int> subset_unrank(int n, int k, std::uint64_t rank) {
  std::vector<int> out(static_cast<std::size_t>(k));
  int v = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      std::uint64_t block = binomial(static_cast<std::uint64_t>(n - 1 - v),
                                     static_cast<std::uint64_t>(k - 1 - i));
      if (rank < block) break;
      rank -= block;
      ++v;
    }
    out[static_cast<std::size_t>(i)] = v++;
  }
  return out;
}

}  // namespace hypercount
