#ifndef HYPERCOUNT_MOMENTS_HPP
#define HYPERCOUNT_MOMENTS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "hypercount/pattern.hpp"
#include "hypercount/prob.hpp"
#include "hypercount/rational.hpp"

namespace hypercount {

// The concrete edges of the listed sizes over {0..n-1}, indexed densely:
// ids are grouped by size (ascending) and lexicographic within a size.
class EdgeUniverse {
 public:
  EdgeUniverse(int n, std::vector<int> sizes, std::uint64_t max_edges = 1u << 26);

  int n() const { return n_; }
  const std::vector<int>& sizes() const { return sizes_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t size_offset(int size) const;
  std::uint64_t size_count(int size) const;
  int size_of(std::uint64_t id) const;
  std::uint64_t id_of(const Edge& e) const;
  Edge edge_of(std::uint64_t id) const;

 private:
  int n_;
  std::vector<int> sizes_;
  std::vector<std::uint64_t> offsets_;  // parallel to sizes_, plus total at end
  std::uint64_t total_;
};

// Copies of a pattern flattened into edge-id rows (sorted ids per copy).
struct CopyTable {
  int edges_per_copy = 0;
  std::uint64_t copy_count = 0;
  std::vector<std::uint32_t> ids;  // copy_count * edges_per_copy
  std::span<const std::uint32_t> copy(std::uint64_t i) const {
    return {ids.data() + i * static_cast<std::uint64_t>(edges_per_copy),
            static_cast<std::size_t>(edges_per_copy)};
  }
};
CopyTable build_copy_table(const Pattern& p, const EdgeUniverse& u);

// log P_F and log Q_F for a multiset of edge sizes (empty product = 0).
std::pair<double, double> log_presence_products(
    const std::vector<int>& edge_sizes, const Probabilities& probs);
std::pair<Rational, Rational> presence_products_exact(
    const std::vector<int>& edge_sizes, const Probabilities& probs);

// E[ Y_1 ... Y_r ] for centered copy indicators, by inclusion-exclusion
// over the 2^r position subsets. The list is a multiset: repeat a copy to
// raise its power. 1 <= r <= 4.
double joint_central_moment(std::span<const PlacedCopy> copies,
                            const Probabilities& probs);
Rational joint_central_moment_exact(std::span<const PlacedCopy> copies,
                                    const Probabilities& probs);

// ---- formula engines ------------------------------------------------

double mean_exact(const Pattern& p, int n, const Probabilities& probs);
Rational mean_exact_rat(const Pattern& p, int n, const Probabilities& probs);

// Overlap-profile tallies: the probability-independent part of the pair /
// triple / quadruple sums, reusable across probability tables.
class PairTally {
 public:
  PairTally(const Pattern& p, int n,
            std::uint64_t guard = kPairEnumerationGuard);
  double variance(const Probabilities& probs) const;
  Rational variance_exact(const Probabilities& probs) const;

  const Pattern& pattern() const { return pattern_; }
  int n() const { return n_; }
  std::uint64_t copy_count() const { return copy_count_; }

 private:
  template <class T> T variance_impl(const Probabilities&) const;
  Pattern pattern_;
  int n_;
  std::uint64_t copy_count_;
  // key: per-size union edge counts of the pair -> number of unordered pairs
  std::map<std::vector<int>, std::int64_t> pair_counts_;
  friend class FourthMomentTally;
};

class FourthMomentTally {
 public:
  FourthMomentTally(const Pattern& p, int n,
                    std::uint64_t guard = kQuadEnumerationGuard);

  double fourth_central(const Probabilities& probs) const;
  Rational fourth_central_exact(const Probabilities& probs) const;
  double variance(const Probabilities& probs) const;
  Rational variance_exact(const Probabilities& probs) const;

  std::uint64_t copy_count() const { return copy_count_; }

 private:
  template <class T> T variance_impl(const Probabilities&) const;
  template <class T> T fourth_impl(const Probabilities&) const;

  Pattern pattern_;
  int n_;
  std::uint64_t copy_count_;
  int num_sizes_;
  // keys are concatenated per-size union counts; see moments.cpp
  std::map<std::vector<int>, std::int64_t> pair_counts_;
  std::map<std::vector<int>, std::int64_t> triple_counts_;
  std::map<std::vector<int>, std::int64_t> quad_counts_;
};

double variance_exact(const Pattern& p, int n, const Probabilities& probs);
Rational variance_exact_rat(const Pattern& p, int n, const Probabilities& probs);
double fourth_central_exact(const Pattern& p, int n, const Probabilities& probs);
Rational fourth_central_exact_rat(const Pattern& p, int n,
                                  const Probabilities& probs);
double excess_kurtosis_exact(const Pattern& p, int n, const Probabilities& probs);

// ---- full probability-space oracle ----------------------------------

// Exact distribution of the copy count from state enumeration over the
// relevant concrete edges (or an explicit superset of sizes).
class OracleTable {
 public:
  OracleTable(const Pattern& p, int n, std::vector<int> sizes = {},
              int edge_budget = kOracleEdgeBudget);

  std::map<long long, double> pmf(const Probabilities& probs) const;
  std::map<long long, Rational> pmf_exact(const Probabilities& probs) const;

  // central/raw moments straight from the state tally
  struct Moments {
    double mean, variance, fourth_central, excess_kurtosis;
  };
  Moments moments(const Probabilities& probs) const;
  struct MomentsExact {
    Rational mean, variance, fourth_central;
  };
  MomentsExact moments_exact(const Probabilities& probs) const;

 private:
  template <class T>
  std::map<long long, T> pmf_impl(const Probabilities& probs) const;
  std::vector<int> sizes_;
  std::vector<std::uint32_t> size_edge_counts_;  // edges per size in universe
  // (z, per-size present counts) -> number of states
  std::map<std::vector<std::uint32_t>, std::uint64_t> tally_;
};

std::map<long long, double> pmf_oracle(const Pattern& p, int n,
                                       const Probabilities& probs);
std::map<long long, Rational> pmf_oracle_exact(const Pattern& p, int n,
                                               const Probabilities& probs);

// ---- asymptotic surrogates -------------------------------------------

struct SurrogateReport {
  double log_mean_surrogate;       // v_H ln n + ln P_H
  double mean_surrogate;
  double log_variance_surrogate;   // 2 ln P_H + max_F [(2v_H - v_F) ln n + ln Q_F - ln P_F]
  double variance_surrogate;
  std::size_t argmax_subset;       // index into sub_patterns(p)
  std::string argmax_signature;
  // split form of the same maximum: sparse part over subsets whose edges
  // all have p <= 1/2, dense part over single edges with p > 1/2
  double sparse_term_log;          // max over such F of -(v_F ln n + ln P_F); -inf if none
  double dense_term_log;           // max over edges of ln q - |e| ln n; -inf if none
};
SurrogateReport surrogates(const Pattern& p, int n, const Probabilities& probs);

}  // namespace hypercount

#endif
