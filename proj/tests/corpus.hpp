#ifndef HYPERCOUNT_TESTS_CORPUS_HPP
#define HYPERCOUNT_TESTS_CORPUS_HPP

#include <string>
#include <vector>

#include "hypercount/pattern.hpp"
#include "hypercount/prob.hpp"

namespace corpus {

using hypercount::Edge;
using hypercount::Pattern;

inline Pattern single_edge() { return Pattern(2, {{0, 1}}); }
inline Pattern single_loop() { return Pattern(1, {{0}}); }
inline Pattern two_path() { return Pattern(3, {{0, 1}, {1, 2}}); }
inline Pattern triangle() { return Pattern(3, {{0, 1}, {0, 2}, {1, 2}}); }
inline Pattern loop_plus_pair() { return Pattern(2, {{0}, {0, 1}}); }
inline Pattern triple_edge() { return Pattern(3, {{0, 1, 2}}); }
// two triangles sharing one vertex: the six-edge member of the corpus
inline Pattern bowtie() {
  return Pattern(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
}

inline std::vector<Pattern> all_patterns() {
  return {single_edge(), single_loop(), two_path(),    triangle(),
          loop_plus_pair(), triple_edge(), bowtie()};
}

// homogeneous spec across the pattern's sizes, exact rational p
inline hypercount::Probabilities homogeneous(const Pattern& p,
                                             const std::string& prob) {
  hypercount::Probabilities out;
  for (int s : p.sizes())
    out.set(s, hypercount::entry_from_p(hypercount::parse_rational(prob)));
  return out;
}

inline hypercount::ProbabilitySpec homogeneous_spec(const Pattern& p,
                                                    const std::string& prob) {
  hypercount::ProbabilitySpec spec;
  for (int s : p.sizes())
    spec.set(s, hypercount::parse_schedule(prob));
  return spec;
}

}  // namespace corpus

#endif
