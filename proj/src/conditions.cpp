#include "hypercount/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypercount/moments.hpp"

namespace hypercount {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SubsetScan {
  double min_log_scale = kInf;       // min_F v_F ln n + ln P_F
  std::size_t min_scale_at = 0;
  double max_log_var = -kInf;        // max_F -v_F ln n + ln Q_F - ln P_F
  std::size_t max_var_at = 0;
  double min_log_scale_q = kInf;     // min_F v_F ln n + ln P_F - ln Q_F
  std::size_t min_scale_q_at = 0;
  double min_log_scale_1mP = kInf;   // min_F v_F ln n + ln P_F - ln(1 - P_F)
  std::size_t min_scale_1mP_at = 0;
  std::vector<SubPattern> subs;
};

SubsetScan scan_subsets(const Pattern& p, long long n,
                        const Probabilities& probs) {
  SubsetScan s;
  s.subs = sub_patterns(remove_isolated_vertices(p).first);
  const double ln_n = std::log(static_cast<double>(n));
  for (std::size_t i = 0; i < s.subs.size(); ++i) {
    const Pattern& F = s.subs[i].pattern;
    auto [lp, lq] = log_presence_products(F.size_multiset(), probs);
    double scale = F.vertex_count() * ln_n + lp;
    if (scale < s.min_log_scale) { s.min_log_scale = scale; s.min_scale_at = i; }
    double var = -F.vertex_count() * ln_n + lq - lp;
    if (var > s.max_log_var) { s.max_log_var = var; s.max_var_at = i; }
    double scale_q = scale - lq;
    if (scale_q < s.min_log_scale_q) { s.min_log_scale_q = scale_q; s.min_scale_q_at = i; }
    // ln(1 - P_F) without cancellation: expm1 of the log-product
    double log_1mP = std::log(-std::expm1(lp));
    double scale_1mp = scale - log_1mP;
    if (scale_1mp < s.min_log_scale_1mP) {
      s.min_log_scale_1mP = scale_1mp;
      s.min_scale_1mP_at = i;
    }
  }
  return s;
}

}  // namespace

SubsetExtremum min_expected_scale(const Pattern& p, long long n,
                                  const Probabilities& probs) {
  auto s = scan_subsets(p, n, probs);
  return {s.min_log_scale, s.subs[s.min_scale_at].pattern.signature()};
}

SubsetExtremum max_variance_scale(const Pattern& p, long long n,
                                  const Probabilities& probs) {
  auto s = scan_subsets(p, n, probs);
  return {s.max_log_var, s.subs[s.max_var_at].pattern.signature()};
}

ConditionReport clt_conditions(const Pattern& p, long long n,
                               const Probabilities& probs) {
  Pattern pat = remove_isolated_vertices(p).first;
  auto s = scan_subsets(pat, n, probs);
  const double ln_n = std::log(static_cast<double>(n));

  ConditionReport r;
  r.min_scale = std::exp(s.min_log_scale);
  r.min_scale_witness = s.subs[s.min_scale_at].pattern.signature();

  for (int ei = 0; ei < pat.edge_count(); ++ei) {
    const Edge& e = pat.edges()[static_cast<std::size_t>(ei)];
    const int sz = static_cast<int>(e.size());
    const ProbEntry& pe = probs.at(sz);
    EdgeConditionValue v;
    v.edge_index = ei;
    v.size = sz;
    v.tail_term = std::exp(sz * ln_n + pe.log_q);
    v.quotient_term = std::exp(s.max_log_var - (-sz * ln_n + pe.log_q));
    v.total = v.tail_term + v.quotient_term;
    r.per_edge.push_back(v);
  }

  r.homogeneous = probs.homogeneous(pat.sizes());
  if (r.homogeneous) {
    const ProbEntry& pe = probs.at(pat.sizes().front());
    r.item2_min_scale = r.min_scale;
    r.item2_tail = std::exp(pe.log_q + pat.min_edge_size() * ln_n);
    r.item3 = std::exp(pe.log_q + s.min_log_scale);
  }
  return r;
}

double bound_wasserstein(const Pattern& p, long long n,
                         const Probabilities& probs,
                         BoundBreakdown* breakdown) {
  Pattern pat = remove_isolated_vertices(p).first;
  auto s = scan_subsets(pat, n, probs);
  const double ln_n = std::log(static_cast<double>(n));
  double total = std::exp(-0.25 * s.min_log_scale);
  BoundBreakdown bd;
  bd.first_term = total;
  bd.witness = s.subs[s.min_scale_at].pattern.signature();
  for (const Edge& e : pat.edges()) {
    const int sz = static_cast<int>(e.size());
    const ProbEntry& pe = probs.at(sz);
    double log_ratio = (-sz * ln_n + pe.log_q) - s.max_log_var;
    double log_tail = -(pe.log_q + sz * ln_n);
    double term;
    if (log_ratio <= log_tail) {
      term = std::exp(0.5 * log_ratio);
      bd.edge_branch.push_back(0);
    } else {
      term = std::exp(0.5 * log_tail);
      bd.edge_branch.push_back(1);
    }
    bd.edge_terms.push_back(term);
    total += term;
  }
  bd.value = total;
  if (breakdown) *breakdown = bd;
  return total;
}

double bound_kolmogorov(const Pattern& p, long long n,
                        const Probabilities& probs,
                        BoundBreakdown* breakdown) {
  Pattern pat = remove_isolated_vertices(p).first;
  auto s = scan_subsets(pat, n, probs);
  const double ln_n = std::log(static_cast<double>(n));
  double total = std::exp(-0.2 * s.min_log_scale);
  BoundBreakdown bd;
  bd.first_term = total;
  bd.witness = s.subs[s.min_scale_at].pattern.signature();
  for (const Edge& e : pat.edges()) {
    const int sz = static_cast<int>(e.size());
    const ProbEntry& pe = probs.at(sz);
    double log_ratio = (-sz * ln_n + pe.log_q) - s.max_log_var;
    double log_tail = -(pe.log_q + sz * ln_n);
    // powers first, then the minimum
    double a = std::exp(log_ratio / 3.0);
    double b = std::exp(0.5 * log_tail);
    bd.edge_branch.push_back(a <= b ? 0 : 1);
    double term = std::min(a, b);
    bd.edge_terms.push_back(term);
    total += term;
  }
  bd.value = total;
  if (breakdown) *breakdown = bd;
  return total;
}

double bound_bounded_p(const Pattern& p, long long n,
                       const Probabilities& probs, std::string* witness) {
  auto m = min_expected_scale(p, n, probs);
  if (witness) *witness = m.witness;
  return std::exp(-0.5 * m.log_value);
}

std::pair<double, double> bound_sufficient(const Pattern& p, long long n,
                                           const Probabilities& probs) {
  Pattern pat = remove_isolated_vertices(p).first;
  auto s = scan_subsets(pat, n, probs);
  const double ln_n = std::log(static_cast<double>(n));

  // max over edges with p > 1/2 of (1-p) / n^{3|e|}; empty max -> 0 term
  double dense_42 = -kInf, dense_43 = -kInf;
  for (const Edge& e : pat.edges()) {
    const int sz = static_cast<int>(e.size());
    const ProbEntry& pe = probs.at(sz);
    if (pe.p > 0.5) {
      dense_42 = std::max(dense_42, pe.log_q - 3.0 * sz * ln_n);
      dense_43 = std::max(dense_43, -(pe.log_q + sz * ln_n));
    }
  }
  double first = std::exp(-0.5 * s.min_log_scale_q) +
                 (dense_42 == -kInf
                      ? 0.0
                      : std::exp(s.min_log_scale_q + 0.5 * dense_42));
  double second = std::exp(-0.5 * s.min_log_scale) +
                  (dense_43 == -kInf ? 0.0 : std::exp(0.5 * dense_43));
  return {first, second};
}

double bound_jlr(const Pattern& p, long long n, const Probabilities& probs,
                 std::string* witness) {
  Pattern pat = remove_isolated_vertices(p).first;
  auto s = scan_subsets(pat, n, probs);
  auto [lpH, lqH] = log_presence_products(pat.size_multiset(), probs);
  (void)lqH;
  double log_1mPH = std::log(-std::expm1(lpH));
  if (witness) *witness = s.subs[s.min_scale_1mP_at].pattern.signature();
  return std::exp(log_1mPH + 1.5 * s.min_log_scale_1mP -
                  2.0 * s.min_log_scale);
}

KurtosisSurrogate kurtosis_surrogate(const Pattern& p, long long n,
                                     double p_hom) {
  if (!(p_hom > 0 && p_hom < 1))
    throw Error("homogeneous probability must lie in (0,1)");
  Pattern pat = remove_isolated_vertices(p).first;
  Probabilities probs;
  for (int s : pat.sizes()) probs.set(s, entry_from_p_double(p_hom));
  auto s = scan_subsets(pat, n, probs);
  KurtosisSurrogate out;
  out.value = std::exp(-(std::log1p(-p_hom) + s.min_log_scale));
  out.companion = std::exp(-pat.min_edge_size() *
                           std::log(static_cast<double>(n)));
  out.witness = s.subs[s.min_scale_at].pattern.signature();
  return out;
}

double loglog_slope(const std::vector<long long>& ns,
                    const std::vector<double>& values) {
  if (ns.size() != values.size() || ns.size() < 2)
    throw Error("slope fit needs at least two grid points");
  const std::size_t m = ns.size();
  double sx = 0, sy = 0;
  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(values[i] > 0)) throw Error("slope fit needs positive values");
    xs[i] = std::log(static_cast<double>(ns[i]));
    ys[i] = std::log(values[i]);
    sx += xs[i];
    sy += ys[i];
  }
  double mx = sx / static_cast<double>(m), my = sy / static_cast<double>(m);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < m; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / den;
}

ThresholdReport threshold_classify(const Pattern& p,
                                   const ProbabilitySpec& spec,
                                   const std::vector<long long>& n_grid) {
  if (n_grid.size() < 2) throw Error("threshold grid needs >= 2 points");
  ThresholdReport r;
  for (long long n : n_grid) {
    Probabilities probs = spec.evaluate(n);
    auto m = min_expected_scale(p, n, probs);
    r.ns.push_back(n);
    r.values.push_back(std::exp(m.log_value));
    r.witnesses.push_back(m.witness);
  }
  r.slope = loglog_slope(r.ns, r.values);
  if (r.slope > 0.02)
    r.verdict = ThresholdVerdict::ToOne;
  else if (r.slope < -0.02)
    r.verdict = ThresholdVerdict::ToZero;
  else
    r.verdict = ThresholdVerdict::Inconclusive;
  return r;
}

}  // namespace hypercount
