#ifndef HYPERCOUNT_NORMAL_HPP
#define HYPERCOUNT_NORMAL_HPP

#include <cmath>

namespace hypercount {

// Standard normal CDF. erfc keeps the absolute error a few ulp, far below
// the 1e-10 budget the distance estimators assume.
inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / 1.4142135623730951);
}

inline double normal_pdf(double x) {
  return 0.3989422804014327 * std::exp(-0.5 * x * x);
}

// Antiderivative of the CDF: int_{-inf}^{x} Phi(t) dt = x*Phi(x) + phi(x).
inline double normal_cdf_integral(double x) {
  return x * normal_cdf(x) + normal_pdf(x);
}

// Quantile: Acklam's rational approximation polished by two Halley steps,
// giving close to full double accuracy on (0, 1).
double normal_quantile(double p);

}  // namespace hypercount

#endif
