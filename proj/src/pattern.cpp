#include "hypercount/pattern.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hypercount/combin.hpp"

namespace hypercount {

namespace {

bool edge_less(const Edge& a, const Edge& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<Edge> normalize_edges(std::vector<Edge> edges, int vertex_count) {
  for (auto& e : edges) {
    if (e.empty()) throw Error("empty edge");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw Error("repeated vertex inside an edge");
    if (e.front() < 0 || e.back() >= vertex_count)
      throw Error("edge vertex out of range");
  }
  std::sort(edges.begin(), edges.end(), edge_less);
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw Error("duplicate edge");
  return edges;
}

}  // namespace

Pattern::Pattern(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count),
      edges_(normalize_edges(std::move(edges), vertex_count)) {
  if (vertex_count_ <= 0) throw Error("vertex count must be positive");
  std::vector<char> covered(static_cast<std::size_t>(vertex_count_), 0);
  for (const auto& e : edges_) {
    size_multiset_.push_back(static_cast<int>(e.size()));
    for (int v : e) covered[static_cast<std::size_t>(v)] = 1;
  }
  std::sort(size_multiset_.begin(), size_multiset_.end());
  sizes_ = size_multiset_;
  sizes_.erase(std::unique(sizes_.begin(), sizes_.end()), sizes_.end());
  for (int v = 0; v < vertex_count_; ++v)
    if (!covered[static_cast<std::size_t>(v)]) isolated_.push_back(v);
}

int Pattern::size_count(int size) const {
  return static_cast<int>(std::count(size_multiset_.begin(),
                                     size_multiset_.end(), size));
}

int Pattern::min_edge_size() const {
  if (size_multiset_.empty()) throw Error("empty pattern");
  return size_multiset_.front();
}

Pattern Pattern::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int vertices = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "vertices:") {
      if (vertices != -1) throw Error("duplicate vertices line");
      if (!(ls >> vertices) || vertices <= 0)
        throw Error("bad vertices line " + std::to_string(lineno));
    } else if (key == "edge:") {
      if (vertices == -1) throw Error("edge line before vertices line");
      Edge e;
      int v;
      while (ls >> v) {
        if (v < 1 || v > vertices)
          throw Error("vertex out of range on line " + std::to_string(lineno));
        e.push_back(v - 1);
      }
      if (e.empty()) throw Error("empty edge on line " + std::to_string(lineno));
      std::sort(e.begin(), e.end());
      if (std::adjacent_find(e.begin(), e.end()) != e.end())
        throw Error("repeated vertex on line " + std::to_string(lineno));
      edges.push_back(std::move(e));
    } else {
      throw Error("unrecognized line " + std::to_string(lineno) + ": " + key);
    }
  }
  if (vertices == -1) throw Error("missing vertices line");
  // catch duplicate edge lines explicitly before normalization dedupe
  {
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("duplicate edge line");
  }
  return Pattern(vertices, std::move(edges));
}

Pattern Pattern::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pattern file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Pattern::to_text() const {
  std::ostringstream out;
  out << "vertices: " << vertex_count_ << "\n";
  for (const auto& e : edges_) {
    out << "edge:";
    for (int v : e) out << ' ' << (v + 1);
    out << "\n";
  }
  return out.str();
}

std::string Pattern::signature() const {
  std::ostringstream out;
  out << "v" << vertex_count_ << ":";
  for (const auto& e : edges_) {
    out << "{";
    for (std::size_t i = 0; i < e.size(); ++i)
      out << (i ? " " : "") << (e[i] + 1);
    out << "}";
  }
  return out.str();
}

std::pair<Pattern, int> remove_isolated_vertices(const Pattern& p) {
  if (p.edge_count() == 0)
    throw Error("empty pattern: the copy count is deterministic and its "
                "statistics are undefined");
  const auto& iso = p.isolated_vertices();
  if (iso.empty()) return {p, 0};
  std::vector<int> remap(static_cast<std::size_t>(p.vertex_count()), -1);
  int next = 0;
  std::size_t it = 0;
  for (int v = 0; v < p.vertex_count(); ++v) {
    if (it < iso.size() && iso[it] == v) {
      ++it;
      continue;
    }
    remap[static_cast<std::size_t>(v)] = next++;
  }
  std::vector<Edge> edges = p.edges();
  for (auto& e : edges)
    for (auto& v : e) v = remap[static_cast<std::size_t>(v)];
  return {Pattern(next, std::move(edges)), static_cast<int>(iso.size())};
}

namespace {

// per-vertex degree signature: sorted list of incident edge sizes
std::vector<std::vector<int>> vertex_signatures(const Pattern& p) {
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(p.vertex_count()));
  for (const auto& e : p.edges())
    for (int v : e)
      sig[static_cast<std::size_t>(v)].push_back(static_cast<int>(e.size()));
  for (auto& s : sig) std::sort(s.begin(), s.end());
  return sig;
}

// Backtracking vertex-map search. If count_all, counts every bijection of
// a onto b preserving edges; otherwise stops at the first.
std::uint64_t map_search(const Pattern& a, const Pattern& b, bool count_all) {
  const int v = a.vertex_count();
  if (v != b.vertex_count()) return 0;
  if (a.size_multiset() != b.size_multiset()) return 0;
  auto sig_a = vertex_signatures(a), sig_b = vertex_signatures(b);
  {
    auto sa = sig_a, sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return 0;
  }
  std::set<Edge> b_edges(b.edges().begin(), b.edges().end());

  // incidence of a: edges fully determined once all their vertices mapped
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(v));
  for (int ei = 0; ei < a.edge_count(); ++ei)
    for (int w : a.edges()[static_cast<std::size_t>(ei)])
      incident[static_cast<std::size_t>(w)].push_back(ei);

  std::vector<int> map(static_cast<std::size_t>(v), -1);
  std::vector<char> used(static_cast<std::size_t>(v), 0);
  std::uint64_t found = 0;

  std::function<bool(int)> rec = [&](int u) -> bool {
    if (u == v) {
      ++found;
      return !count_all;  // stop if only existence is needed
    }
    for (int w = 0; w < v; ++w) {
      if (used[static_cast<std::size_t>(w)]) continue;
      if (sig_a[static_cast<std::size_t>(u)] != sig_b[static_cast<std::size_t>(w)])
        continue;
      map[static_cast<std::size_t>(u)] = w;
      used[static_cast<std::size_t>(w)] = 1;
      bool ok = true;
      for (int ei : incident[static_cast<std::size_t>(u)]) {
        const Edge& e = a.edges()[static_cast<std::size_t>(ei)];
        bool complete = true;
        Edge img;
        img.reserve(e.size());
        for (int x : e) {
          if (map[static_cast<std::size_t>(x)] < 0) {
            complete = false;
            break;
          }
          img.push_back(map[static_cast<std::size_t>(x)]);
        }
        if (!complete) continue;
        std::sort(img.begin(), img.end());
        if (!b_edges.count(img)) {
          ok = false;
          break;
        }
      }
      if (ok && rec(u + 1)) return true;
      used[static_cast<std::size_t>(w)] = 0;
      map[static_cast<std::size_t>(u)] = -1;
    }
    return false;
  };
  rec(0);
  return found;
}

}  // namespace

bool are_isomorphic(const Pattern& a, const Pattern& b) {
  return map_search(a, b, /*count_all=*/false) > 0;
}

std::uint64_t automorphism_count(const Pattern& p) {
  return map_search(p, p, /*count_all=*/true);
}

std::uint64_t count_copies_total(const Pattern& p, int n) {
  if (p.has_isolated_vertices())
    throw Error("count_copies_total expects an isolated-free pattern");
  const int v = p.vertex_count();
  if (n < v) return 0;
  return binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(v)) *
         factorial(static_cast<unsigned>(v)) / automorphism_count(p);
}

std::vector<int> PlacedCopy::vertices() const {
  std::vector<int> out;
  for (const auto& e : edges) out.insert(out.end(), e.begin(), e.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void enumerate_copies(const Pattern& p, int n,
                      const std::function<bool(const PlacedCopy&)>& fn,
                      std::uint64_t subset_begin, std::uint64_t subset_end) {
  if (p.has_isolated_vertices())
    throw Error("enumerate_copies expects an isolated-free pattern");
  const int v = p.vertex_count();
  if (n < v) return;

  std::uint64_t subset_index = 0;
  bool stop = false;
  std::vector<int> perm(static_cast<std::size_t>(v));
  for_each_subset(n, v, [&](const std::vector<int>& verts) {
    if (subset_index >= subset_end) return false;
    if (subset_index++ < subset_begin) return true;

    // distinct placed edge sets on this vertex subset, lexicographic
    std::set<std::vector<Edge>> seen;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<Edge> placed;
      placed.reserve(p.edges().size());
      for (const auto& e : p.edges()) {
        Edge img;
        img.reserve(e.size());
        for (int w : e)
          img.push_back(verts[static_cast<std::size_t>(
              perm[static_cast<std::size_t>(w)])]);
        std::sort(img.begin(), img.end());
        placed.push_back(std::move(img));
      }
      std::sort(placed.begin(), placed.end(), edge_less);
      seen.insert(std::move(placed));
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (const auto& placed : seen) {
      PlacedCopy copy{placed};
      if (!fn(copy)) {
        stop = true;
        return false;
      }
    }
    return true;
  });
  (void)stop;
}

std::vector<PlacedCopy> enumerate_copies(const Pattern& p, int n) {
  std::vector<PlacedCopy> out;
  enumerate_copies(p, n, [&](const PlacedCopy& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

bool is_edgewise_separable(std::span<const PlacedCopy> copies) {
  const int m = static_cast<int>(copies.size());
  if (m < 2) throw Error("separability needs at least two copies");
  if (m > 20) throw Error("separability split search capped at 20 copies");

  std::vector<std::set<Edge>> edge_sets(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    edge_sets[static_cast<std::size_t>(i)] =
        std::set<Edge>(copies[static_cast<std::size_t>(i)].edges.begin(),
                       copies[static_cast<std::size_t>(i)].edges.end());

  // fix copy 0 on the left side; complements cover the rest
  for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
    std::set<Edge> left, right;
    left.insert(edge_sets[0].begin(), edge_sets[0].end());
    bool has_right = false;
    for (int i = 1; i < m; ++i) {
      auto& dst = (mask >> (i - 1)) & 1 ? left : right;
      if (!((mask >> (i - 1)) & 1)) has_right = true;
      dst.insert(edge_sets[static_cast<std::size_t>(i)].begin(),
                 edge_sets[static_cast<std::size_t>(i)].end());
    }
    if (!has_right) continue;
    bool disjoint = true;
    for (const auto& e : right)
      if (left.count(e)) {
        disjoint = false;
        break;
      }
    if (disjoint) return true;
  }
  return false;
}

OverlapClass classify_overlap(std::vector<PlacedCopy> copies) {
  OverlapClass out;
  out.copies = std::move(copies);
  std::set<Edge> uni;
  const int m = static_cast<int>(out.copies.size());
  std::vector<std::set<Edge>> sets(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    sets[static_cast<std::size_t>(i)] =
        std::set<Edge>(out.copies[static_cast<std::size_t>(i)].edges.begin(),
                       out.copies[static_cast<std::size_t>(i)].edges.end());
    uni.insert(sets[static_cast<std::size_t>(i)].begin(),
               sets[static_cast<std::size_t>(i)].end());
  }
  out.union_edges.assign(uni.begin(), uni.end());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      bool share = false;
      for (const auto& e : sets[static_cast<std::size_t>(i)])
        if (sets[static_cast<std::size_t>(j)].count(e)) {
          share = true;
          break;
        }
      if (share) out.sharing_pairs.emplace_back(i, j);
    }
  out.separable = m >= 2 && is_edgewise_separable(out.copies);
  return out;
}

namespace {

Pattern induced_sub_pattern(const Pattern& p, const std::vector<int>& idx) {
  std::vector<int> remap(static_cast<std::size_t>(p.vertex_count()), -1);
  int next = 0;
  std::vector<Edge> edges;
  for (int ei : idx) {
    Edge e = p.edges()[static_cast<std::size_t>(ei)];
    for (auto& v : e) {
      if (remap[static_cast<std::size_t>(v)] < 0)
        remap[static_cast<std::size_t>(v)] = next++;
      v = remap[static_cast<std::size_t>(v)];
    }
    edges.push_back(std::move(e));
  }
  return Pattern(next, std::move(edges));
}

}  // namespace

std::vector<SubPattern> sub_patterns(const Pattern& p) {
  if (p.has_isolated_vertices())
    throw Error("sub_patterns expects an isolated-free pattern");
  const int e = p.edge_count();
  if (e > 20) throw Error("sub_patterns capped at 20 edges");
  std::vector<SubPattern> out;
  out.reserve((std::size_t{1} << e) - 1);
  for (std::uint32_t mask = 1; mask < (1u << e); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < e; ++i)
      if ((mask >> i) & 1) idx.push_back(i);
    out.push_back(SubPattern{induced_sub_pattern(p, idx), idx});
  }
  return out;
}

std::vector<SubPatternClass> sub_pattern_classes(const Pattern& p) {
  auto subs = sub_patterns(p);
  std::vector<SubPatternClass> classes;
  // bucket by cheap invariants before running isomorphism
  std::map<std::pair<int, std::vector<int>>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < subs.size(); ++i)
    buckets[{subs[i].pattern.vertex_count(), subs[i].pattern.size_multiset()}]
        .push_back(i);
  for (auto& [key, members] : buckets) {
    std::vector<std::size_t> reps;
    for (std::size_t i : members) {
      bool placed = false;
      for (std::size_t r : reps) {
        std::size_t ci = 0;
        for (; ci < classes.size(); ++ci)
          if (classes[ci].representative == subs[r].edge_indices) break;
        if (are_isomorphic(subs[i].pattern, subs[r].pattern)) {
          ++classes[ci].multiplicity;
          placed = true;
          break;
        }
      }
      if (!placed) {
        reps.push_back(i);
        classes.push_back(
            SubPatternClass{subs[i].pattern, 1, subs[i].edge_indices});
      }
    }
  }
  return classes;
}

}  // namespace hypercount
