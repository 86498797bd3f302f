#ifndef HYPERCOUNT_CONDITIONS_HPP
#define HYPERCOUNT_CONDITIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "hypercount/pattern.hpp"
#include "hypercount/prob.hpp"

namespace hypercount {

// Every bound is reported with its implied constant set to 1; order
// comparisons across n go through log-log slopes, never absolute claims.

// log of min over nonempty sub-patterns F of n^{v_F} P_F, with witness.
struct SubsetExtremum {
  double log_value;
  std::string witness;  // signature of the realizing sub-pattern
};
SubsetExtremum min_expected_scale(const Pattern& p, long long n,
                                  const Probabilities& probs);
// log of max over F of n^{-v_F} Q_F / P_F (the variance-scale maximum).
SubsetExtremum max_variance_scale(const Pattern& p, long long n,
                                  const Probabilities& probs);

struct EdgeConditionValue {
  int edge_index;
  int size;
  double tail_term;      // n^{|e|} (1 - p)
  double quotient_term;  // max_F n^{-v_F} Q_F/P_F over n^{-|e|} (1 - p)
  double total;
};

struct ConditionReport {
  double min_scale;            // min_F n^{v_F} P_F
  std::string min_scale_witness;
  std::vector<EdgeConditionValue> per_edge;
  bool homogeneous = false;
  // homogeneous equivalence quantities (items 2 and 3)
  double item2_min_scale = 0;   // same as min_scale
  double item2_tail = 0;        // (1-p) n^{min |e|}
  double item3 = 0;             // (1-p) min_F p^{e_F} n^{v_F}
};
ConditionReport clt_conditions(const Pattern& p, long long n,
                               const Probabilities& probs);

struct BoundBreakdown {
  double value;
  double first_term;
  std::vector<double> edge_terms;
  std::vector<int> edge_branch;  // 0 = quotient branch, 1 = tail branch
  std::string witness;
};

double bound_wasserstein(const Pattern& p, long long n,
                         const Probabilities& probs,
                         BoundBreakdown* breakdown = nullptr);
double bound_kolmogorov(const Pattern& p, long long n,
                        const Probabilities& probs,
                        BoundBreakdown* breakdown = nullptr);
// bounded-probability specialization: (min_F P_F n^{v_F})^{-1/2}
double bound_bounded_p(const Pattern& p, long long n,
                       const Probabilities& probs,
                       std::string* witness = nullptr);
// the two sufficient-condition displays; first uses the Q-weighted minimum
std::pair<double, double> bound_sufficient(const Pattern& p, long long n,
                                           const Probabilities& probs);
double bound_jlr(const Pattern& p, long long n, const Probabilities& probs,
                 std::string* witness = nullptr);

struct KurtosisSurrogate {
  double value;          // ((1-p) min_F p^{e_F} n^{v_F})^{-1}
  double companion;      // n^{-min |e|}
  std::string witness;
};
KurtosisSurrogate kurtosis_surrogate(const Pattern& p, long long n, double p_hom);

// Ordinary least squares on (ln n, ln value).
double loglog_slope(const std::vector<long long>& ns,
                    const std::vector<double>& values);

enum class ThresholdVerdict { ToOne, ToZero, Inconclusive };

struct ThresholdReport {
  std::vector<long long> ns;
  std::vector<double> values;       // min_F n^{v_F} P_F per grid point
  std::vector<std::string> witnesses;
  double slope = 0;
  ThresholdVerdict verdict = ThresholdVerdict::Inconclusive;
};
// slope threshold +-0.02 around zero counts as "bounded"/inconclusive
ThresholdReport threshold_classify(const Pattern& p,
                                   const ProbabilitySpec& spec,
                                   const std::vector<long long>& n_grid);

}  // namespace hypercount

#endif
