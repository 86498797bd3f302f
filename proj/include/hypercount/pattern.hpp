#ifndef HYPERCOUNT_PATTERN_HPP
#define HYPERCOUNT_PATTERN_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hypercount/common.hpp"

namespace hypercount {

// An edge is a sorted set of 0-based vertices; size-1 edges are loops.
using Edge = std::vector<int>;

// A finite motif hypergraph: the thing whose copies get counted.
// Immutable after construction and safe to share across threads.
class Pattern {
 public:
  Pattern(int vertex_count, std::vector<Edge> edges);

  static Pattern parse(const std::string& text);
  static Pattern from_file(const std::filesystem::path& path);
  std::string to_text() const;

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  // Distinct edge sizes, ascending.
  const std::vector<int>& sizes() const { return sizes_; }
  // All edge sizes with multiplicity, ascending.
  const std::vector<int>& size_multiset() const { return size_multiset_; }
  // count of edges of the given size
  int size_count(int size) const;
  int min_edge_size() const;

  const std::vector<int>& isolated_vertices() const { return isolated_; }
  bool has_isolated_vertices() const { return !isolated_.empty(); }

  // Compact identifier such as "v3:{1 2}{1 3}{2 3}" (1-based), usable as a
  // dictionary key and stable across runs.
  std::string signature() const;

  bool operator==(const Pattern& other) const {
    return vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
  }

 private:
  int vertex_count_;
  std::vector<Edge> edges_;       // sorted lexicographically (size, vertices)
  std::vector<int> sizes_;
  std::vector<int> size_multiset_;
  std::vector<int> isolated_;
};

// Strips isolated vertices; returns the trimmed pattern and how many were
// removed. Rejects edgeless patterns (the count would be deterministic).
std::pair<Pattern, int> remove_isolated_vertices(const Pattern& p);

// Vertex-bijection equivalence. Expects isolated-free inputs.
bool are_isomorphic(const Pattern& a, const Pattern& b);

// Order of the vertex-permutation group preserving the edge set.
std::uint64_t automorphism_count(const Pattern& p);

// Number of distinct copies of p inside the complete hypergraph on n
// vertices: C(n, v) * v! / |Aut|. Returns 0 for n < v.
std::uint64_t count_copies_total(const Pattern& p, int n);

// A concrete placement of a pattern: its edge set over {0..n-1}.
struct PlacedCopy {
  std::vector<Edge> edges;  // sorted like Pattern edges
  std::vector<int> vertices() const;
};

// Visits each copy exactly once, lexicographically by the chosen vertex
// subset and then by placed edge set. The callback may return false to
// stop. subset_begin/subset_end select a shard of the C(n, v) vertex
// subsets; concatenating shards in order reproduces the full sequence.
void enumerate_copies(const Pattern& p, int n,
                      const std::function<bool(const PlacedCopy&)>& fn,
                      std::uint64_t subset_begin = 0,
                      std::uint64_t subset_end = UINT64_MAX);

std::vector<PlacedCopy> enumerate_copies(const Pattern& p, int n);

// Definition test: true iff some nonempty proper index split has
// edge-disjoint unions. Exhaustive over 2^(m-1)-1 splits; m >= 2.
bool is_edgewise_separable(std::span<const PlacedCopy> copies);

// Overlap summary for a family of copies.
struct OverlapClass {
  std::vector<PlacedCopy> copies;
  std::vector<Edge> union_edges;
  std::vector<std::pair<int, int>> sharing_pairs;  // indices sharing an edge
  bool separable;
};
OverlapClass classify_overlap(std::vector<PlacedCopy> copies);

// One nonempty edge subset of a pattern, re-labelled to its covered
// vertices (hence isolated-free).
struct SubPattern {
  Pattern pattern;
  std::vector<int> edge_indices;  // indices into the parent's edge list
};

// All 2^e - 1 nonempty edge subsets. Subsets are not merged by
// isomorphism; min/max scans iterate the full list.
std::vector<SubPattern> sub_patterns(const Pattern& p);

// Isomorphism-classed view (one representative per class) for reporting
// and for the orthogonal-projection machinery.
struct SubPatternClass {
  Pattern pattern;                 // representative, re-labelled
  int multiplicity;                // number of edge subsets in the class
  std::vector<int> representative; // edge indices of the representative
};
std::vector<SubPatternClass> sub_pattern_classes(const Pattern& p);

}  // namespace hypercount

#endif
