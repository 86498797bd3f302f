#ifndef HYPERCOUNT_HOEFFDING_HPP
#define HYPERCOUNT_HOEFFDING_HPP

#include <cstdint>
#include <vector>

#include "hypercount/moments.hpp"
#include "hypercount/pattern.hpp"
#include "hypercount/prob.hpp"

namespace hypercount {

// Orthogonal decomposition of the standardized copy count into edge-subset
// terms. Terms are grouped by the isomorphism class of the placed edge set;
// every class is one sub-pattern of the (isolated-free) pattern.

// Copies of H on a fixed vertex superset of a placed F: the number of
// edge sets isomorphic to H, containing F placed on {0..v_F-1}, covering
// exactly {0..v_H-1}. Depends only on the isomorphism type of F.
std::uint64_t completion_count_fixed(const Pattern& sub, const Pattern& whole);

// Completions inside {0..n-1}: completion_count_fixed * C(n - v_F, v_H - v_F).
std::uint64_t completion_count(const Pattern& sub, const Pattern& whole, int n);

// Exact projection variance of the class of F:
//   (P_H^2 / VarZ) * (Q_F / P_F) * N_F^n * c_F(n)^2.
double var_IF_exact(const Pattern& sub, const Pattern& whole, int n,
                    const Probabilities& probs, double var_z);

struct ProjectionEntry {
  Pattern sub;                  // class representative
  int multiplicity;             // edge subsets in the class
  std::uint64_t placements;     // N_F^n
  std::uint64_t completions;    // c_F(n)
  double var_share;             // Var[I_F]
};

struct ProjectionReport {
  std::vector<ProjectionEntry> classes;
  std::vector<double> var_per_level;  // index m-1 -> Var[I_m]
  double total;                        // should be 1
  double var_z;
};

ProjectionReport projection_report(const Pattern& p, int n,
                                   const Probabilities& probs);

double var_Im(const Pattern& p, int n, const Probabilities& probs, int m);

// Value of the projection I_F on one realization (edge-id bitmap).
double projection_value(const Pattern& sub, const Pattern& whole, int n,
                        const Probabilities& probs,
                        const std::vector<std::uint64_t>& realized_bits,
                        double var_z);

// Standardized count and the term-sum evaluated on the same realization;
// the two must agree to numerical precision.
std::pair<double, double> hoeffding_reconstruct(
    const Pattern& p, int n, const Probabilities& probs,
    const std::vector<Edge>& realized, double mean, double sd);

// Coefficient tying the sub-pattern projections to the standardized count
// of the sub-pattern itself.
double alpha_exact(const Pattern& sub, const Pattern& whole, int n,
                   const Probabilities& probs);

}  // namespace hypercount

#endif
