#include "hypercount/distance.hpp"

#include <algorithm>
#include <cmath>

#include "hypercount/normal.hpp"

namespace hypercount {

double dkw_radius(std::uint64_t m, double delta) {
  if (m == 0) throw Error("empty sample");
  if (!(delta > 0 && delta < 1)) throw Error("delta must lie in (0,1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(m)));
}

double dk_empirical(std::vector<double> samples) {
  if (samples.empty()) throw Error("empty sample");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double sup = 0;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double x = samples[i];
    const double phi = normal_cdf(x);
    const double before = static_cast<double>(i) / m;
    const double after = static_cast<double>(j) / m;
    sup = std::max({sup, std::abs(before - phi), std::abs(after - phi)});
    i = j;
  }
  return sup;
}

double dw_empirical(std::vector<double> samples) {
  if (samples.size() < 2) throw Error("need at least two samples");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double total = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double q = normal_quantile((static_cast<double>(i) + 0.5) / m);
    total += std::abs(samples[i] - q);
  }
  return total / m;
}

void DiscreteDist::normalize_sort() {
  std::sort(atoms.begin(), atoms.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& [x, p] : atoms) {
    if (!merged.empty() && merged.back().first == x)
      merged.back().second += p;
    else
      merged.emplace_back(x, p);
  }
  atoms = std::move(merged);
}

double DiscreteDist::mean() const {
  double m = 0;
  for (const auto& [x, p] : atoms) m += x * p;
  return m;
}

double DiscreteDist::variance() const {
  const double m = mean();
  double v = 0;
  for (const auto& [x, p] : atoms) v += p * (x - m) * (x - m);
  return v;
}

double DiscreteDist::largest_atom() const {
  double best = 0;
  for (const auto& [x, p] : atoms) best = std::max(best, p);
  return best;
}

DiscreteDist DiscreteDist::standardized() const {
  const double m = mean(), sd = std::sqrt(variance());
  if (!(sd > 0)) throw Error("degenerate distribution");
  return shifted_scaled(-m, 1.0 / sd);
}

DiscreteDist DiscreteDist::shifted_scaled(double shift, double scale) const {
  DiscreteDist out;
  for (const auto& [x, p] : atoms) out.atoms.emplace_back((x + shift) * scale, p);
  out.normalize_sort();
  return out;
}

DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b) {
  DiscreteDist out;
  out.atoms.reserve(a.atoms.size() * b.atoms.size());
  for (const auto& [xa, pa] : a.atoms)
    for (const auto& [xb, pb] : b.atoms) out.atoms.emplace_back(xa + xb, pa * pb);
  out.normalize_sort();
  return out;
}

double dk_exact(const DiscreteDist& d) {
  if (d.atoms.empty()) throw Error("empty distribution");
  double sup = 0, cdf = 0;
  for (const auto& [x, p] : d.atoms) {
    const double phi = normal_cdf(x);
    sup = std::max({sup, std::abs(cdf - phi), std::abs(cdf + p - phi)});
    cdf += p;
  }
  return sup;
}

double dk_exact_from_pmf(const std::map<long long, double>& pmf, double mean,
                         double sd) {
  if (!(sd > 0)) throw Error("degenerate count: sd must be positive");
  DiscreteDist d;
  for (const auto& [z, p] : pmf)
    d.atoms.emplace_back((static_cast<double>(z) - mean) / sd, p);
  d.normalize_sort();
  return dk_exact(d);
}

double dw_exact(const DiscreteDist& d) {
  if (d.atoms.empty()) throw Error("empty distribution");
  // d_W = integral over t of |F_d(t) - Phi(t)|; F_d is a step function, so
  // each piece splits at most once, at Phi^{-1}(level).
  auto segment = [](double level, double a, double b) {
    // integral over [a, b] of |Phi(t) - level|
    auto signed_part = [&](double lo, double hi) {
      return (normal_cdf_integral(hi) - normal_cdf_integral(lo)) -
             level * (hi - lo);
    };
    if (level <= 0) return signed_part(a, b);
    if (level >= 1) return -signed_part(a, b);
    double cross = normal_quantile(level);
    if (cross <= a) return signed_part(a, b);
    if (cross >= b) return -signed_part(a, b);
    return signed_part(cross, b) - signed_part(a, cross);
  };

  double total = 0;
  // left tail: F = 0 on (-inf, x_0]
  total += normal_cdf_integral(d.atoms.front().first);
  double cdf = 0;
  for (std::size_t i = 0; i + 1 < d.atoms.size(); ++i) {
    cdf += d.atoms[i].second;
    total += segment(cdf, d.atoms[i].first, d.atoms[i + 1].first);
  }
  // right tail: F = 1 on [x_last, inf): integral of (1 - Phi)
  const double b = d.atoms.back().first;
  total += normal_pdf(b) - b * (1.0 - normal_cdf(b));
  return total;
}

DistanceEstimate distances_from_samples(const std::vector<double>& samples,
                                        double delta) {
  DistanceEstimate est;
  est.m = samples.size();
  est.delta = delta;
  est.dkw = dkw_radius(samples.size(), delta);
  est.dk = dk_empirical(samples);
  est.dw = dw_empirical(samples);
  return est;
}

std::vector<InequalityCheck> check_shift_inequalities(const DiscreteDist& x,
                                                      const DiscreteDist& y) {
  if (std::abs(y.mean()) > 1e-12) throw Error("shift variable must be centred");
  DiscreteDist sum = convolve(x, y);
  const double var_y = y.variance();
  std::vector<InequalityCheck> out;
  {
    InequalityCheck c;
    c.name = "wasserstein_shift";
    c.lhs = dw_exact(sum);
    c.rhs = dw_exact(x) + std::sqrt(var_y);
    c.slack = c.rhs - c.lhs;
    out.push_back(c);
  }
  {
    InequalityCheck c;
    c.name = "kolmogorov_shift";
    c.lhs = dk_exact(sum);
    c.rhs = dk_exact(x) + (4.0 / 3.0) * std::cbrt(var_y);
    c.slack = c.rhs - c.lhs;
    out.push_back(c);
  }
  return out;
}

std::vector<InequalityCheck> check_sum_inequalities(
    const std::vector<DiscreteDist>& xs) {
  if (xs.empty()) throw Error("need at least one summand");
  double total_var = 0;
  for (const auto& x : xs) {
    if (std::abs(x.mean()) > 1e-12) throw Error("summands must be centred");
    total_var += x.variance();
  }
  if (std::abs(total_var - 1.0) > 1e-9)
    throw Error("summand variances must total 1");

  DiscreteDist sum = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) sum = convolve(sum, xs[i]);

  double rhs_w = 0, rhs_k = 0;
  for (const auto& x : xs) {
    const double v = x.variance();
    DiscreteDist std_x = x.standardized();
    rhs_w += std::min(std::sqrt(v), dw_exact(std_x));
    rhs_k += std::min(std::cbrt(v), dk_exact(std_x));
  }
  std::vector<InequalityCheck> out;
  {
    InequalityCheck c;
    c.name = "wasserstein_sum";
    c.lhs = dw_exact(sum);
    c.rhs = 2.0 * rhs_w;
    c.slack = c.rhs - c.lhs;
    out.push_back(c);
  }
  {
    InequalityCheck c;
    c.name = "kolmogorov_sum";
    c.lhs = dk_exact(sum);
    c.rhs = 3.0 * rhs_k;
    c.slack = c.rhs - c.lhs;
    out.push_back(c);
  }
  return out;
}

}  // namespace hypercount
