#ifndef HYPERCOUNT_DISTANCE_HPP
#define HYPERCOUNT_DISTANCE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hypercount/common.hpp"
#include "hypercount/rational.hpp"

namespace hypercount {

// Distribution-free confidence radius for the empirical CDF:
// sqrt(ln(2/delta) / (2m)).
double dkw_radius(std::uint64_t m, double delta);

// sup over sample atoms of the CDF gap to the standard normal (both the
// left and right limits at every atom).
double dk_empirical(std::vector<double> samples);

// Quantile-coupling estimate of the 1-Wasserstein distance to the
// standard normal: mean |x_(i) - Phi^{-1}((i - 0.5)/m)| over sorted
// samples. Deterministic given the sorted sample; bias vanishes as m grows.
double dw_empirical(std::vector<double> samples);

// A finite distribution given by atoms and probabilities.
struct DiscreteDist {
  std::vector<std::pair<double, double>> atoms;  // (value, mass), sorted

  void normalize_sort();
  double mean() const;
  double variance() const;
  double largest_atom() const;
  DiscreteDist standardized() const;  // (x - mean)/sd
  DiscreteDist shifted_scaled(double shift, double scale) const;
};

DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b);

// Exact Kolmogorov distance of the standardized atoms to the normal.
double dk_exact_from_pmf(const std::map<long long, double>& pmf, double mean,
                         double sd);
double dk_exact(const DiscreteDist& d);

// Exact 1-Wasserstein distance of a discrete distribution to the normal:
// the L1 gap of the CDFs, integrated in closed form piece by piece (the
// only error left is the CDF evaluation itself, below 1e-10).
double dw_exact(const DiscreteDist& d);

struct DistanceEstimate {
  double dk = 0;
  double dw = 0;
  std::uint64_t m = 0;
  double delta = 0;
  double dkw = 0;
  double largest_atom = 0;  // of the standardized pmf when known
};

DistanceEstimate distances_from_samples(const std::vector<double>& samples,
                                        double delta);

// One verified inequality: lhs <= rhs with slack = rhs - lhs.
struct InequalityCheck {
  std::string name;
  double lhs = 0, rhs = 0, slack = 0;
  bool holds() const { return lhs <= rhs; }
};

// X plus an independent centred Y cannot drift from the normal by more
// than sd(Y) in Wasserstein or (4/3) Var(Y)^{1/3} in Kolmogorov.
std::vector<InequalityCheck> check_shift_inequalities(const DiscreteDist& x,
                                                      const DiscreteDist& y);

// Sum of independent centred variables with unit total variance: the
// distance is bounded by 2 (resp. 3) times the sum of per-term minima.
std::vector<InequalityCheck> check_sum_inequalities(
    const std::vector<DiscreteDist>& xs);

}  // namespace hypercount

#endif
