#ifndef HYPERCOUNT_SIM_HPP
#define HYPERCOUNT_SIM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hypercount/moments.hpp"
#include "hypercount/pattern.hpp"
#include "hypercount/prob.hpp"

namespace hypercount {

// One Monte Carlo batch of copy counts. Rerunning with the same
// (seed, n, spec, pattern, reps) reproduces identical values at any worker
// count: replication r draws from the counter stream (seed, r, edge id).
struct SampleBatch {
  std::uint64_t seed = 0;
  std::uint64_t reps = 0;
  int n = 0;
  std::string pattern_signature;
  std::map<int, std::string> spec_strings;
  std::vector<long long> values;
};

// Realized edges of the listed sizes, as ids into the given universe.
// An edge is absent exactly when its uniform draw falls below q.
std::vector<std::uint32_t> sample_relevant_edge_ids(const EdgeUniverse& u,
                                                    const Probabilities& probs,
                                                    std::uint64_t seed,
                                                    std::uint64_t rep);

// Concrete-edge variant of the sampler.
std::vector<Edge> sample_relevant_edges(int n, const Probabilities& probs,
                                        const std::vector<int>& sizes,
                                        std::uint64_t seed, std::uint64_t rep);

// Number of copies whose edges all lie in the realized set (a bitmap over
// universe ids).
long long count_in_sample(const CopyTable& copies,
                          const std::vector<std::uint64_t>& realized_bits);

long long count_in_sample(const Pattern& p, int n,
                          const std::vector<Edge>& realized);

SampleBatch simulate_copy_counts(const Pattern& p, int n,
                                 const ProbabilitySpec& spec,
                                 std::uint64_t reps, std::uint64_t seed,
                                 int workers = 1);

std::vector<double> standardize(const std::vector<long long>& values,
                                double mean, double sd);

}  // namespace hypercount

#endif
