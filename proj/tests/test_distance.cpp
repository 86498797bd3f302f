#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "hypercount/combin.hpp"
#include "hypercount/distance.hpp"
#include "hypercount/moments.hpp"
#include "hypercount/normal.hpp"
#include "hypercount/rng.hpp"
#include "hypercount/sim.hpp"

using namespace hypercount;

TEST_CASE("normal cdf and quantile accuracy") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(normal_cdf(1.0) == doctest::Approx(0.841344746068543).epsilon(1e-12));
  CHECK(normal_cdf(-1.0) == doctest::Approx(0.158655253931457).epsilon(1e-12));
  for (double p : {1e-8, 1e-4, 0.02, 0.3, 0.5, 0.77, 0.999, 1 - 1e-9}) {
    double x = normal_quantile(p);
    CHECK(normal_cdf(x) == doctest::Approx(p).epsilon(1e-11));
  }
}

TEST_CASE("dkw radius") {
  CHECK(dkw_radius(100000, 0.01) ==
        doctest::Approx(std::sqrt(std::log(200.0) / 200000.0)).epsilon(1e-12));
  CHECK(dkw_radius(10, 0.01) > dkw_radius(100, 0.01));
  CHECK_THROWS_AS(dkw_radius(0, 0.01), Error);
  CHECK_THROWS_AS(dkw_radius(10, 1.5), Error);
}

TEST_CASE("empirical kolmogorov distance") {
  CHECK(dk_empirical({0.0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dk_empirical({-1.0, 1.0}) ==
        doctest::Approx(normal_cdf(1.0) - 0.5).epsilon(1e-12));
  CHECK_THROWS_AS(dk_empirical({}), Error);

  // DKW property on a seeded normal sample
  std::vector<double> z;
  const std::uint64_t m = 100000;
  for (std::uint64_t r = 0; r < m; ++r)
    z.push_back(normal_quantile(u01(2718, 0, r)));
  CHECK(dk_empirical(z) <= dkw_radius(m, 0.01));
}

TEST_CASE("empirical wasserstein distance") {
  // self-coupling: samples at the coupling quantiles give zero
  const std::uint64_t m = 1000;
  std::vector<double> q;
  for (std::uint64_t i = 0; i < m; ++i)
    q.push_back(normal_quantile((static_cast<double>(i) + 0.5) /
                                static_cast<double>(m)));
  CHECK(dw_empirical(q) == doctest::Approx(0.0).epsilon(1e-12));

  // translation consistency: shifting by c moves the estimate by exactly
  // |c| here, and never by more in general
  std::vector<double> shifted;
  for (double x : q) shifted.push_back(x + 3.0);
  CHECK(dw_empirical(shifted) == doctest::Approx(3.0).epsilon(1e-9));

  std::vector<double> noisy;
  for (std::size_t i = 0; i < q.size(); ++i)
    noisy.push_back(q[i] + ((i % 2) ? 0.1 : -0.1));
  double base = dw_empirical(noisy);
  std::vector<double> noisy_shift;
  for (double x : noisy) noisy_shift.push_back(x + 0.37);
  CHECK(dw_empirical(noisy_shift) <= base + 0.37 + 1e-12);

  // point mass at zero converges to E|N| = sqrt(2/pi)
  std::vector<double> zeros(1000000, 0.0);
  CHECK(dw_empirical(zeros) ==
        doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1.5e-2));

  CHECK_THROWS_AS(dw_empirical({1.0}), Error);
}

TEST_CASE("exact kolmogorov distance from a pmf") {
  // standardized Bernoulli(1/2): atoms -1 and 1
  std::map<long long, double> pmf = {{0, 0.5}, {1, 0.5}};
  CHECK(dk_exact_from_pmf(pmf, 0.5, 0.5) ==
        doctest::Approx(0.5 - normal_cdf(-1.0)).epsilon(1e-12));

  // degenerate pmf standardized around its atom: gap 0.5 at zero
  std::map<long long, double> point = {{3, 1.0}};
  CHECK(dk_exact_from_pmf(point, 3.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(dk_exact_from_pmf(pmf, 0.5, 0.0), Error);
}

TEST_CASE("exact wasserstein distance") {
  // degenerate at zero: E|N|
  DiscreteDist zero{{{0.0, 1.0}}};
  CHECK(dw_exact(zero) ==
        doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-10));

  // symmetric two-point at +-1: 2 * int_0^1 Phi(t) - t/... evaluate via a
  // fine Riemann sum as an independent check
  DiscreteDist pm1{{{-1.0, 0.5}, {1.0, 0.5}}};
  double direct = 0;
  const int steps = 200000;
  const double lo = -10, hi = 10;
  double prev_x = lo;
  double cdf = 0;
  std::size_t idx = 0;
  for (int i = 1; i <= steps; ++i) {
    double x = lo + (hi - lo) * i / steps;
    double mid = 0.5 * (x + prev_x);
    while (idx < pm1.atoms.size() && pm1.atoms[idx].first <= mid) {
      cdf += pm1.atoms[idx].second;
      ++idx;
    }
    direct += std::abs(cdf - normal_cdf(mid)) * (x - prev_x);
    prev_x = x;
  }
  CHECK(dw_exact(pm1) == doctest::Approx(direct).epsilon(1e-4));

  // empirical estimator converges to the exact value
  std::vector<double> samples;
  for (int i = 0; i < 400000; ++i) samples.push_back(i % 2 ? 1.0 : -1.0);
  CHECK(dw_empirical(samples) == doctest::Approx(dw_exact(pm1)).epsilon(2e-3));
}

TEST_CASE("empirical matches exact distances for the triangle count") {
  Pattern tri = corpus::triangle();
  auto spec = corpus::homogeneous_spec(tri, "0.5");
  auto probs = spec.evaluate(4);
  double mean = mean_exact(tri, 4, probs);
  double sd = std::sqrt(variance_exact(tri, 4, probs));
  auto pmf = pmf_oracle(tri, 4, probs);
  double dk_oracle = dk_exact_from_pmf(pmf, mean, sd);
  CHECK(dk_oracle > 0);
  CHECK(dk_oracle < 1);

  const std::uint64_t m = 200000;
  SampleBatch batch = simulate_copy_counts(tri, 4, spec, m, 808, 4);
  double dk_mc = dk_empirical(standardize(batch.values, mean, sd));
  CHECK(std::abs(dk_mc - dk_oracle) <= dkw_radius(m, 0.01));
}

TEST_CASE("shift inequalities hold with nonnegative slack") {
  DiscreteDist x{{{-1.0, 0.5}, {1.0, 0.5}}};  // standardized Bernoulli(1/2)

  // zero shift: both sides equal
  DiscreteDist y0{{{0.0, 1.0}}};
  for (const auto& c : check_shift_inequalities(x, y0)) {
    CHECK(c.holds());
    CHECK(c.lhs == doctest::Approx(c.rhs - (c.name == "kolmogorov_shift"
                                                ? 0.0
                                                : 0.0))
                       .epsilon(1e-9));
  }

  // fair +-0.1 coin shift
  DiscreteDist y{{{-0.1, 0.5}, {0.1, 0.5}}};
  for (const auto& c : check_shift_inequalities(x, y)) {
    CHECK(c.holds());
    CHECK(c.slack > 0);
  }

  // asymmetric centred shift
  DiscreteDist y2{{{-0.3, 0.25}, {0.1, 0.75}}};
  for (const auto& c : check_shift_inequalities(x, y2)) CHECK(c.holds());

  DiscreteDist off{{{0.2, 1.0}}};
  CHECK_THROWS_AS(check_shift_inequalities(x, off), Error);
}

TEST_CASE("sum inequalities for independent centred summands") {
  // two equal-variance standardized Bernoullis scaled to total variance 1
  double a = std::sqrt(0.5);
  DiscreteDist x1{{{-a, 0.5}, {a, 0.5}}};
  DiscreteDist x2 = x1;
  auto checks = check_sum_inequalities({x1, x2});
  REQUIRE(checks.size() == 2);
  for (const auto& c : checks) {
    CHECK(c.holds());
    CHECK(c.slack > 0);
  }

  // three unequal summands
  DiscreteDist z1{{{-0.6, 0.5}, {0.6, 0.5}}};
  DiscreteDist z2{{{-0.6, 0.64}, {8.0 / 7.5, 0.36}}};
  // center z2 and scale the family to unit total variance
  double m2 = z2.mean();
  z2 = z2.shifted_scaled(-m2, 1.0);
  double v = z1.variance() + z2.variance();
  DiscreteDist s1 = z1.shifted_scaled(0.0, 1.0 / std::sqrt(v));
  DiscreteDist s2 = z2.shifted_scaled(0.0, 1.0 / std::sqrt(v));
  for (const auto& c : check_sum_inequalities({s1, s2})) CHECK(c.holds());

  CHECK_THROWS_AS(check_sum_inequalities({x1, x1, x2}), Error);  // var sum
}

TEST_CASE("empirical kolmogorov distance decreases along growing n") {
  Pattern tri = corpus::triangle();
  auto spec = corpus::homogeneous_spec(tri, "0.5");
  const std::uint64_t m = 30000;
  // closed-form triangle moments, independent of the pair engine (which is
  // guarded away at n = 48): N p^3 and N vY + 2 C(n,2) C(n-2,2) (p^5 - p^6)
  auto tri_moments = [](int n) {
    double N = static_cast<double>(count_copies_total(corpus::triangle(), n));
    double mean = N / 8.0;
    double pairs = static_cast<double>(binomial(n, 2) * binomial(n - 2, 2));
    double var = N * (7.0 / 64.0) + 2 * pairs * (1.0 / 64.0);
    return std::pair{mean, var};
  };
  {
    auto probs = spec.evaluate(6);
    auto [mean6, var6] = tri_moments(6);
    CHECK(mean6 == doctest::Approx(mean_exact(tri, 6, probs)).epsilon(1e-12));
    CHECK(var6 == doctest::Approx(variance_exact(tri, 6, probs)).epsilon(1e-12));
  }
  std::vector<double> dks;
  for (int n : {6, 12, 24, 48}) {
    auto [mean, var] = tri_moments(n);
    SampleBatch batch = simulate_copy_counts(tri, n, spec, m, 99, 8);
    dks.push_back(dk_empirical(standardize(batch.values, mean, std::sqrt(var))));
  }
  const double tol = 2 * dkw_radius(m, 0.01);
  for (std::size_t i = 1; i < dks.size(); ++i)
    CHECK(dks[i] <= dks[i - 1] + tol);
}
