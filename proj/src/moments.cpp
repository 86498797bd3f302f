#include "hypercount/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

#include "hypercount/combin.hpp"

namespace hypercount {

// ---------------------------------------------------------------- universe

EdgeUniverse::EdgeUniverse(int n, std::vector<int> sizes, std::uint64_t max_edges)
    : n_(n), sizes_(std::move(sizes)) {
  std::sort(sizes_.begin(), sizes_.end());
  sizes_.erase(std::unique(sizes_.begin(), sizes_.end()), sizes_.end());
  if (sizes_.empty()) throw Error("edge universe needs at least one size");
  if (sizes_.front() < 1) throw Error("edge size must be at least 1");
  std::uint64_t off = 0;
  for (int s : sizes_) {
    if (s > n) throw Error("edge size exceeds n");
    offsets_.push_back(off);
    off += binomial(static_cast<std::uint64_t>(n),
                    static_cast<std::uint64_t>(s));
    if (off > max_edges)
      throw GuardExceeded("edge universe exceeds " + std::to_string(max_edges) +
                          " concrete edges");
  }
  offsets_.push_back(off);
  total_ = off;
}

std::uint64_t EdgeUniverse::size_offset(int size) const {
  for (std::size_t i = 0; i < sizes_.size(); ++i)
    if (sizes_[i] == size) return offsets_[i];
  throw Error("size not in universe");
}

std::uint64_t EdgeUniverse::size_count(int size) const {
  for (std::size_t i = 0; i < sizes_.size(); ++i)
    if (sizes_[i] == size) return offsets_[i + 1] - offsets_[i];
  throw Error("size not in universe");
}

int EdgeUniverse::size_of(std::uint64_t id) const {
  for (std::size_t i = 0; i < sizes_.size(); ++i)
    if (id < offsets_[i + 1]) return sizes_[i];
  throw Error("edge id out of range");
}

std::uint64_t EdgeUniverse::id_of(const Edge& e) const {
  const int s = static_cast<int>(e.size());
  return size_offset(s) + subset_rank(n_, e);
}

Edge EdgeUniverse::edge_of(std::uint64_t id) const {
  for (std::size_t i = 0; i < sizes_.size(); ++i)
    if (id < offsets_[i + 1])
      return subset_unrank(n_, sizes_[i], id - offsets_[i]);
  throw Error("edge id out of range");
}

CopyTable build_copy_table(const Pattern& p, const EdgeUniverse& u) {
  CopyTable t;
  t.edges_per_copy = p.edge_count();
  enumerate_copies(p, u.n(), [&](const PlacedCopy& c) {
    for (const auto& e : c.edges)
      t.ids.push_back(static_cast<std::uint32_t>(u.id_of(e)));
    std::sort(t.ids.end() - t.edges_per_copy, t.ids.end());
    ++t.copy_count;
    return true;
  });
  return t;
}

// ------------------------------------------------------- presence products

std::pair<double, double> log_presence_products(
    const std::vector<int>& edge_sizes, const Probabilities& probs) {
  double lp = 0, lq = 0;
  for (int s : edge_sizes) {
    const ProbEntry& e = probs.at(s);
    lp += e.log_p;
    lq += e.log_q;
  }
  return {lp, lq};
}

std::pair<Rational, Rational> presence_products_exact(
    const std::vector<int>& edge_sizes, const Probabilities& probs) {
  Rational P(1), Q(1);
  for (int s : edge_sizes) {
    const ProbEntry& e = probs.at(s);
    if (!e.exact) throw Error("probability for size " + std::to_string(s) +
                              " has no exact rational form");
    P *= e.p_rat;
    Q *= e.q_rat;
  }
  return {P, Q};
}

// ------------------------------------------------ joint central moments

namespace {

template <class T>
struct Arith;

template <>
struct Arith<double> {
  static double p_of(const ProbEntry& e) { return e.p; }
  static double q_of(const ProbEntry& e) { return e.q; }
  static double one() { return 1.0; }
};

template <>
struct Arith<Rational> {
  static Rational p_of(const ProbEntry& e) {
    if (!e.exact) throw Error("exact mode needs rational probabilities");
    return e.p_rat;
  }
  static Rational q_of(const ProbEntry& e) {
    if (!e.exact) throw Error("exact mode needs rational probabilities");
    return e.q_rat;
  }
  static Rational one() { return Rational(1); }
};

template <class T>
T joint_central_impl(std::span<const PlacedCopy> copies,
                     const Probabilities& probs) {
  const int r = static_cast<int>(copies.size());
  if (r < 1 || r > 4)
    throw Error("joint central moment supports 1..4 factors");

  std::vector<std::set<Edge>> sets(static_cast<std::size_t>(r));
  std::vector<T> own(static_cast<std::size_t>(r), Arith<T>::one());
  for (int i = 0; i < r; ++i) {
    const auto& c = copies[static_cast<std::size_t>(i)];
    if (c.edges.empty()) throw Error("copy without edges");
    sets[static_cast<std::size_t>(i)] =
        std::set<Edge>(c.edges.begin(), c.edges.end());
    for (const auto& e : c.edges)
      own[static_cast<std::size_t>(i)] =
          own[static_cast<std::size_t>(i)] *
          Arith<T>::p_of(probs.at(static_cast<int>(e.size())));
  }

  T total{};
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    std::set<Edge> uni;
    T coeff = Arith<T>::one();
    bool negative = false;
    for (int i = 0; i < r; ++i) {
      if ((mask >> i) & 1) {
        uni.insert(sets[static_cast<std::size_t>(i)].begin(),
                   sets[static_cast<std::size_t>(i)].end());
      } else {
        coeff = coeff * own[static_cast<std::size_t>(i)];
        negative = !negative;
      }
    }
    T pu = Arith<T>::one();
    for (const auto& e : uni)
      pu = pu * Arith<T>::p_of(probs.at(static_cast<int>(e.size())));
    T term = coeff * pu;
    if (negative)
      total = total - term;
    else
      total = total + term;
  }
  return total;
}

}  // namespace

double joint_central_moment(std::span<const PlacedCopy> copies,
                            const Probabilities& probs) {
  return joint_central_impl<double>(copies, probs);
}

Rational joint_central_moment_exact(std::span<const PlacedCopy> copies,
                                    const Probabilities& probs) {
  return joint_central_impl<Rational>(copies, probs);
}

// -------------------------------------------------------------- mean

double mean_exact(const Pattern& p, int n, const Probabilities& probs) {
  Pattern pat = remove_isolated_vertices(p).first;
  auto [lp, lq] = log_presence_products(pat.size_multiset(), probs);
  (void)lq;
  return static_cast<double>(count_copies_total(pat, n)) * std::exp(lp);
}

Rational mean_exact_rat(const Pattern& p, int n, const Probabilities& probs) {
  Pattern pat = remove_isolated_vertices(p).first;
  auto [P, Q] = presence_products_exact(pat.size_multiset(), probs);
  (void)Q;
  return Rational(count_copies_total(pat, n)) * P;
}

// ------------------------------------------------- overlap profile engine

namespace {

// Evaluation context: powers of p per size slot plus the per-copy constants.
template <class T>
struct MomentCtx {
  std::vector<int> sizes;              // distinct sizes, ascending
  std::vector<std::vector<T>> powp;    // powp[slot][k] = p_slot^k
  std::vector<int> pattern_counts;     // edges of each size in the pattern
  T PH, qH, vY, EY4;

  MomentCtx(const Pattern& pat, const Probabilities& probs, int max_pow) {
    sizes = pat.sizes();
    for (int s : sizes) {
      const ProbEntry& e = probs.at(s);
      std::vector<T> row(static_cast<std::size_t>(max_pow + 1));
      row[0] = Arith<T>::one();
      for (int k = 1; k <= max_pow; ++k)
        row[static_cast<std::size_t>(k)] =
            row[static_cast<std::size_t>(k - 1)] * Arith<T>::p_of(e);
      powp.push_back(std::move(row));
      pattern_counts.push_back(pat.size_count(s));
    }
    PH = P_counts(pattern_counts);
    qH = Arith<T>::one() - PH;
    vY = PH * qH;
    EY4 = PH * qH * qH * qH * qH + qH * PH * PH * PH * PH;
  }

  T P_counts(const std::vector<int>& counts) const {
    T r = Arith<T>::one();
    for (std::size_t s = 0; s < powp.size(); ++s)
      r = r * powp[s][static_cast<std::size_t>(counts[s])];
    return r;
  }
};

// E[prod over positions of Y_{elem(pos)}] by inclusion-exclusion, where
// P_union(elem_mask) supplies the presence product of the union.
template <class T, class F>
T jm_generic(std::span<const int> pos_elems, const T& PH, F&& P_union) {
  const int r = static_cast<int>(pos_elems.size());
  T total{};
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    unsigned elems = 0;
    int missing = 0;
    for (int i = 0; i < r; ++i) {
      if ((mask >> i) & 1)
        elems |= 1u << pos_elems[static_cast<std::size_t>(i)];
      else
        ++missing;
    }
    T term = elems ? P_union(elems) : Arith<T>::one();
    for (int k = 0; k < missing; ++k) term = term * PH;
    if (missing & 1)
      total = total - term;
    else
      total = total + term;
  }
  return total;
}

constexpr int kTripleSubsets[] = {0b011, 0b101, 0b110, 0b111};
constexpr int kQuadSubsets[] = {0b0011, 0b0101, 0b1001, 0b0110, 0b1010,
                                0b1100, 0b0111, 0b1011, 0b1101, 0b1110,
                                0b1111};

// Ordered-sum contribution of one unordered pair {0,1} sharing an edge:
//   sum over both orderings of
//   3 E[Yi^2 Yj^2] + 4 E[Yi^3 Yj] - 3 E[Yi^2]E[Yj^2]
//   - 12 E[Yi^2]E[Yi Yj] - 6 (E[Yi Yj])^2.
template <class T, class F>
T pair_contribution(const MomentCtx<T>& ctx, F&& P_union) {
  static const int p22[] = {0, 0, 1, 1};
  static const int p31[] = {0, 0, 0, 1};
  T e22 = jm_generic<T>(std::span<const int>(p22, 4), ctx.PH, P_union);
  T e31 = jm_generic<T>(std::span<const int>(p31, 4), ctx.PH, P_union);
  T e12 = P_union(0b11) - ctx.PH * ctx.PH;
  T six(6), eight(8), twentyfour(24), twelve(12);
  return six * e22 + eight * e31 - six * ctx.vY * ctx.vY -
         twentyfour * ctx.vY * e12 - twelve * e12 * e12;
}

// Ordered-sum contribution of one unordered inseparable triple {0,1,2}:
//   sum over the 6 orderings (i,j,k) of
//   6 [ E[Yi^2 Yj Yk] - E[Yi^2]E[Yj Yk] - 2 E[Yi Yj]E[Yi Yk] ].
template <class T, class F>
T triple_contribution(const MomentCtx<T>& ctx, F&& P_union) {
  T twelve(12), twentyfour(24);
  T total{};
  T pairE[3];  // E[Y_a Y_b] for ab = 01, 02, 12
  pairE[0] = P_union(0b011) - ctx.PH * ctx.PH;
  pairE[1] = P_union(0b101) - ctx.PH * ctx.PH;
  pairE[2] = P_union(0b110) - ctx.PH * ctx.PH;
  for (int h = 0; h < 3; ++h) {
    int a = h == 0 ? 1 : 0, b = h == 2 ? 1 : 2;
    int pos[] = {h, h, a, b};
    T ehab = jm_generic<T>(std::span<const int>(pos, 4), ctx.PH, P_union);
    auto pe = [&](int x, int y) {
      int m = (1 << x) | (1 << y);
      return pairE[m == 0b011 ? 0 : (m == 0b101 ? 1 : 2)];
    };
    total = total + twelve * ehab - twelve * ctx.vY * pe(a, b) -
            twentyfour * pe(h, a) * pe(h, b);
  }
  return total;
}

// Ordered-sum contribution of one unordered inseparable quadruple:
//   24 [ E[Y1 Y2 Y3 Y4] - E12 E34 - E13 E24 - E14 E23 ].
template <class T, class F>
T quad_contribution(const MomentCtx<T>& ctx, F&& P_union) {
  static const int pos[] = {0, 1, 2, 3};
  T e = jm_generic<T>(std::span<const int>(pos, 4), ctx.PH, P_union);
  T ph2 = ctx.PH * ctx.PH;
  T e01 = P_union(0b0011) - ph2, e23 = P_union(0b1100) - ph2;
  T e02 = P_union(0b0101) - ph2, e13 = P_union(0b1010) - ph2;
  T e03 = P_union(0b1001) - ph2, e12 = P_union(0b0110) - ph2;
  T twentyfour(24);
  return twentyfour * (e - e01 * e23 - e02 * e13 - e03 * e12);
}

// counts-of-union helper over sorted id spans
class UnionCounter {
 public:
  UnionCounter(const EdgeUniverse& u) {
    boundaries_.reserve(u.sizes().size());
    for (int s : u.sizes())
      boundaries_.push_back(u.size_offset(s) + u.size_count(s));
  }

  // per-size counts of the union of the given sorted spans
  std::vector<int> count(std::initializer_list<std::span<const std::uint32_t>>
                             spans) const {
    std::array<std::uint32_t, 96> buf;
    std::size_t len = 0;
    for (auto sp : spans) {
      std::copy(sp.begin(), sp.end(), buf.begin() + len);
      len += sp.size();
    }
    std::sort(buf.begin(), buf.begin() + len);
    std::vector<int> counts(boundaries_.size(), 0);
    std::uint32_t prev = UINT32_MAX;
    for (std::size_t i = 0; i < len; ++i) {
      if (buf[i] == prev) continue;
      prev = buf[i];
      std::size_t slot = 0;
      while (buf[i] >= boundaries_[slot]) ++slot;
      ++counts[slot];
    }
    return counts;
  }

 private:
  std::vector<std::uint64_t> boundaries_;
};

bool copies_share_edge(std::span<const std::uint32_t> a,
                       std::span<const std::uint32_t> b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return false;
}

}  // namespace

// -------------------------------------------------------------- PairTally

PairTally::PairTally(const Pattern& p, int n, std::uint64_t guard)
    : pattern_(remove_isolated_vertices(p).first), n_(n) {
  copy_count_ = count_copies_total(pattern_, n);
  if (copy_count_ > guard)
    throw GuardExceeded(
        "pairwise enumeration infeasible: " + std::to_string(copy_count_) +
        " copies exceed the guard of " + std::to_string(guard) +
        "; use the probability-space oracle or the variance surrogate");
  EdgeUniverse u(n, pattern_.sizes());
  CopyTable copies = build_copy_table(pattern_, u);
  UnionCounter uc(u);
  const std::uint64_t N = copies.copy_count;
  for (std::uint64_t i = 0; i < N; ++i) {
    auto ci = copies.copy(i);
    for (std::uint64_t j = i + 1; j < N; ++j) {
      auto cj = copies.copy(j);
      if (!copies_share_edge(ci, cj)) continue;
      ++pair_counts_[uc.count({ci, cj})];
    }
  }
}

template <class T>
T PairTally::variance_impl(const Probabilities& probs) const {
  MomentCtx<T> ctx(pattern_, probs, 2 * pattern_.edge_count());
  T var = T(static_cast<std::int64_t>(copy_count_)) * ctx.vY;
  for (const auto& [counts, cnt] : pair_counts_) {
    T cov = ctx.P_counts(counts) - ctx.PH * ctx.PH;
    var = var + T(2) * T(cnt) * cov;
  }
  return var;
}

double PairTally::variance(const Probabilities& probs) const {
  return variance_impl<double>(probs);
}

Rational PairTally::variance_exact(const Probabilities& probs) const {
  return variance_impl<Rational>(probs);
}

// ------------------------------------------------------ FourthMomentTally

namespace {

// connected-subset enumeration over the copy-overlap graph (each set once)
class ConnectedSets {
 public:
  ConnectedSets(const std::vector<std::vector<int>>& adj)
      : adj_(adj), n_(static_cast<int>(adj.size())) {}

  template <class F>
  void enumerate(int k, F&& emit) {
    std::vector<int> sub;
    std::vector<char> in_sub(static_cast<std::size_t>(n_), 0);
    std::vector<char> in_nbhd(static_cast<std::size_t>(n_), 0);
    for (int v = 0; v < n_; ++v) {
      sub = {v};
      in_sub[static_cast<std::size_t>(v)] = 1;
      std::vector<int> touched = {v};
      in_nbhd[static_cast<std::size_t>(v)] = 1;
      std::vector<int> ext;
      for (int u : adj_[static_cast<std::size_t>(v)])
        if (u > v) {
          ext.push_back(u);
          in_nbhd[static_cast<std::size_t>(u)] = 1;
          touched.push_back(u);
        }
      extend(k, v, sub, ext, in_sub, in_nbhd, touched, emit);
      in_sub[static_cast<std::size_t>(v)] = 0;
      for (int u : touched) in_nbhd[static_cast<std::size_t>(u)] = 0;
    }
  }

 private:
  template <class F>
  void extend(int k, int root, std::vector<int>& sub, std::vector<int>& ext,
              std::vector<char>& in_sub, std::vector<char>& in_nbhd,
              std::vector<int>& touched, F&& emit) {
    if (static_cast<int>(sub.size()) == k) {
      emit(sub);
      return;
    }
    // each extension element spawns one branch; removal is permanent within
    // this frame so sets are produced exactly once
    std::vector<int> local = std::move(ext);
    while (!local.empty()) {
      int w = local.back();
      local.pop_back();
      std::vector<int> next = local;
      std::size_t touched_mark = touched.size();
      for (int u : adj_[static_cast<std::size_t>(w)]) {
        if (u <= root || in_sub[static_cast<std::size_t>(u)] ||
            in_nbhd[static_cast<std::size_t>(u)])
          continue;
        next.push_back(u);
        in_nbhd[static_cast<std::size_t>(u)] = 1;
        touched.push_back(u);
      }
      sub.push_back(w);
      in_sub[static_cast<std::size_t>(w)] = 1;
      extend(k, root, sub, next, in_sub, in_nbhd, touched, emit);
      in_sub[static_cast<std::size_t>(w)] = 0;
      sub.pop_back();
      // restore the exclusion marks of this branch; uniqueness comes from
      // w never re-entering the extension set of this frame
      while (touched.size() > touched_mark) {
        in_nbhd[static_cast<std::size_t>(touched.back())] = 0;
        touched.pop_back();
      }
    }
    ext = std::move(local);
  }

  const std::vector<std::vector<int>>& adj_;
  int n_;
};

}  // namespace

FourthMomentTally::FourthMomentTally(const Pattern& p, int n,
                                     std::uint64_t guard)
    : pattern_(remove_isolated_vertices(p).first), n_(n) {
  copy_count_ = count_copies_total(pattern_, n);
  if (copy_count_ > guard)
    throw GuardExceeded(
        "fourth-moment enumeration infeasible: " +
        std::to_string(copy_count_) + " copies exceed the guard of " +
        std::to_string(guard) +
        "; use the probability-space oracle or the kurtosis surrogate");
  EdgeUniverse u(n, pattern_.sizes());
  num_sizes_ = static_cast<int>(u.sizes().size());
  CopyTable copies = build_copy_table(pattern_, u);
  UnionCounter uc(u);
  const int N = static_cast<int>(copies.copy_count);

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (copies_share_edge(copies.copy(static_cast<std::uint64_t>(i)),
                            copies.copy(static_cast<std::uint64_t>(j)))) {
        adj[static_cast<std::size_t>(i)].push_back(j);
        adj[static_cast<std::size_t>(j)].push_back(i);
      }

  auto span_of = [&](int i) {
    return copies.copy(static_cast<std::uint64_t>(i));
  };

  for (int i = 0; i < N; ++i)
    for (int j : adj[static_cast<std::size_t>(i)])
      if (j > i) ++pair_counts_[uc.count({span_of(i), span_of(j)})];

  ConnectedSets cs(adj);
  cs.enumerate(3, [&](const std::vector<int>& s) {
    std::array<int, 3> v = {s[0], s[1], s[2]};
    std::sort(v.begin(), v.end());
    std::vector<int> key;
    key.reserve(4 * static_cast<std::size_t>(num_sizes_));
    for (int subset : kTripleSubsets) {
      std::vector<std::span<const std::uint32_t>> parts;
      for (int b = 0; b < 3; ++b)
        if ((subset >> b) & 1) parts.push_back(span_of(v[static_cast<std::size_t>(b)]));
      std::vector<int> c =
          parts.size() == 2 ? uc.count({parts[0], parts[1]})
                            : uc.count({parts[0], parts[1], parts[2]});
      key.insert(key.end(), c.begin(), c.end());
    }
    ++triple_counts_[key];
  });
  cs.enumerate(4, [&](const std::vector<int>& s) {
    std::array<int, 4> v = {s[0], s[1], s[2], s[3]};
    std::sort(v.begin(), v.end());
    std::vector<int> key;
    key.reserve(11 * static_cast<std::size_t>(num_sizes_));
    for (int subset : kQuadSubsets) {
      std::vector<std::span<const std::uint32_t>> parts;
      for (int b = 0; b < 4; ++b)
        if ((subset >> b) & 1) parts.push_back(span_of(v[static_cast<std::size_t>(b)]));
      std::vector<int> c;
      switch (parts.size()) {
        case 2: c = uc.count({parts[0], parts[1]}); break;
        case 3: c = uc.count({parts[0], parts[1], parts[2]}); break;
        default: c = uc.count({parts[0], parts[1], parts[2], parts[3]});
      }
      key.insert(key.end(), c.begin(), c.end());
    }
    ++quad_counts_[key];
  });
}

template <class T>
T FourthMomentTally::variance_impl(const Probabilities& probs) const {
  MomentCtx<T> ctx(pattern_, probs, 4 * pattern_.edge_count());
  T var = T(static_cast<std::int64_t>(copy_count_)) * ctx.vY;
  for (const auto& [counts, cnt] : pair_counts_) {
    T cov = ctx.P_counts(counts) - ctx.PH * ctx.PH;
    var = var + T(2) * T(cnt) * cov;
  }
  return var;
}

template <class T>
T FourthMomentTally::fourth_impl(const Probabilities& probs) const {
  MomentCtx<T> ctx(pattern_, probs, 4 * pattern_.edge_count());
  const int ns = num_sizes_;

  T var = variance_impl<T>(probs);
  T total = T(3) * var * var +
            T(static_cast<std::int64_t>(copy_count_)) *
                (ctx.EY4 - T(3) * ctx.vY * ctx.vY);

  for (const auto& entry : pair_counts_) {
    const std::vector<int>& counts = entry.first;
    auto P_union = [&](unsigned elems) -> T {
      if (elems == 0b01 || elems == 0b10) return ctx.PH;
      return ctx.P_counts(counts);
    };
    total = total + T(entry.second) * pair_contribution(ctx, P_union);
  }

  for (const auto& entry : triple_counts_) {
    const std::vector<int>& key = entry.first;
    auto P_union = [&](unsigned elems) -> T {
      if (std::popcount(elems) == 1) return ctx.PH;
      for (std::size_t t = 0; t < 4; ++t)
        if (kTripleSubsets[t] == static_cast<int>(elems)) {
          std::vector<int> counts(key.begin() + static_cast<long>(t) * ns,
                                  key.begin() + static_cast<long>(t + 1) * ns);
          return ctx.P_counts(counts);
        }
      throw Error("bad triple subset");
    };
    total = total + T(entry.second) * triple_contribution(ctx, P_union);
  }

  for (const auto& entry : quad_counts_) {
    const std::vector<int>& key = entry.first;
    auto P_union = [&](unsigned elems) -> T {
      if (std::popcount(elems) == 1) return ctx.PH;
      for (std::size_t t = 0; t < 11; ++t)
        if (kQuadSubsets[t] == static_cast<int>(elems)) {
          std::vector<int> counts(key.begin() + static_cast<long>(t) * ns,
                                  key.begin() + static_cast<long>(t + 1) * ns);
          return ctx.P_counts(counts);
        }
      throw Error("bad quad subset");
    };
    total = total + T(entry.second) * quad_contribution(ctx, P_union);
  }
  return total;
}

double FourthMomentTally::fourth_central(const Probabilities& probs) const {
  return fourth_impl<double>(probs);
}
Rational FourthMomentTally::fourth_central_exact(
    const Probabilities& probs) const {
  return fourth_impl<Rational>(probs);
}
double FourthMomentTally::variance(const Probabilities& probs) const {
  return variance_impl<double>(probs);
}
Rational FourthMomentTally::variance_exact(const Probabilities& probs) const {
  return variance_impl<Rational>(probs);
}

double variance_exact(const Pattern& p, int n, const Probabilities& probs) {
  return PairTally(p, n).variance(probs);
}
Rational variance_exact_rat(const Pattern& p, int n,
                            const Probabilities& probs) {
  return PairTally(p, n).variance_exact(probs);
}
double fourth_central_exact(const Pattern& p, int n,
                            const Probabilities& probs) {
  return FourthMomentTally(p, n).fourth_central(probs);
}
Rational fourth_central_exact_rat(const Pattern& p, int n,
                                  const Probabilities& probs) {
  return FourthMomentTally(p, n).fourth_central_exact(probs);
}

double excess_kurtosis_exact(const Pattern& p, int n,
                             const Probabilities& probs) {
  FourthMomentTally t(p, n);
  double var = t.variance(probs);
  if (!(var > 0)) throw Error("zero variance: kurtosis undefined");
  return t.fourth_central(probs) / (var * var) - 3.0;
}

// -------------------------------------------------------------- oracle

OracleTable::OracleTable(const Pattern& p, int n, std::vector<int> sizes,
                         int edge_budget) {
  Pattern pat = remove_isolated_vertices(p).first;
  sizes_ = sizes.empty() ? pat.sizes() : std::move(sizes);
  std::sort(sizes_.begin(), sizes_.end());
  sizes_.erase(std::unique(sizes_.begin(), sizes_.end()), sizes_.end());
  for (int s : pat.sizes())
    if (!std::count(sizes_.begin(), sizes_.end(), s))
      throw Error("oracle size list misses a pattern edge size");

  EdgeUniverse u(n, sizes_, static_cast<std::uint64_t>(edge_budget));
  const int U = static_cast<int>(u.total());
  if (U > edge_budget)
    throw GuardExceeded("oracle budget exceeded: " + std::to_string(U) +
                        " relevant edges > " + std::to_string(edge_budget));

  CopyTable copies = build_copy_table(pat, u);
  std::vector<std::uint32_t> masks(copies.copy_count, 0);
  for (std::uint64_t i = 0; i < copies.copy_count; ++i)
    for (std::uint32_t id : copies.copy(i)) masks[i] |= 1u << id;

  std::vector<std::uint32_t> region(sizes_.size(), 0);
  for (std::size_t s = 0; s < sizes_.size(); ++s) {
    std::uint64_t off = u.size_offset(sizes_[s]);
    std::uint64_t cnt = u.size_count(sizes_[s]);
    size_edge_counts_.push_back(static_cast<std::uint32_t>(cnt));
    for (std::uint64_t b = 0; b < cnt; ++b)
      region[s] |= 1u << (off + b);
  }

  // dense tally indexed by (z, per-size present counts)
  std::vector<std::uint32_t> strides(sizes_.size() + 1);
  std::uint64_t stride = 1;
  for (std::size_t s = sizes_.size(); s-- > 0;) {
    strides[s + 1] = static_cast<std::uint32_t>(stride);
    stride *= size_edge_counts_[s] + 1;
  }
  strides[0] = static_cast<std::uint32_t>(stride);
  std::vector<std::uint64_t> dense(
      (copies.copy_count + 1) * stride, 0);

  const std::uint64_t nstates = 1ull << U;
  for (std::uint64_t state = 0; state < nstates; ++state) {
    const std::uint32_t st = static_cast<std::uint32_t>(state);
    std::uint32_t z = 0;
    for (std::uint32_t m : masks) z += ((st & m) == m);
    std::uint64_t idx = static_cast<std::uint64_t>(z) * strides[0];
    for (std::size_t s = 0; s < sizes_.size(); ++s)
      idx += static_cast<std::uint64_t>(std::popcount(st & region[s])) *
             strides[s + 1];
    ++dense[idx];
  }

  for (std::uint64_t idx = 0; idx < dense.size(); ++idx) {
    if (!dense[idx]) continue;
    std::vector<std::uint32_t> key(sizes_.size() + 1);
    std::uint64_t rem = idx;
    key[0] = static_cast<std::uint32_t>(rem / strides[0]);
    rem %= strides[0];
    for (std::size_t s = 0; s < sizes_.size(); ++s) {
      key[s + 1] = static_cast<std::uint32_t>(rem / strides[s + 1]);
      rem %= strides[s + 1];
    }
    tally_[key] = dense[idx];
  }
}

template <class T>
std::map<long long, T> OracleTable::pmf_impl(const Probabilities& probs) const {
  // powers of p and q per size
  std::vector<std::vector<T>> pw, qw;
  for (std::size_t s = 0; s < sizes_.size(); ++s) {
    const ProbEntry& e = probs.at(sizes_[s]);
    std::uint32_t m = size_edge_counts_[s];
    std::vector<T> prow(m + 1), qrow(m + 1);
    prow[0] = Arith<T>::one();
    qrow[0] = Arith<T>::one();
    for (std::uint32_t k = 1; k <= m; ++k) {
      prow[k] = prow[k - 1] * Arith<T>::p_of(e);
      qrow[k] = qrow[k - 1] * Arith<T>::q_of(e);
    }
    pw.push_back(std::move(prow));
    qw.push_back(std::move(qrow));
  }
  std::map<long long, T> pmf;
  for (const auto& [key, cnt] : tally_) {
    T prob = T(static_cast<std::int64_t>(cnt));
    for (std::size_t s = 0; s < sizes_.size(); ++s) {
      std::uint32_t c = key[s + 1];
      prob = prob * pw[s][c] * qw[s][size_edge_counts_[s] - c];
    }
    auto [it, fresh] = pmf.emplace(static_cast<long long>(key[0]), prob);
    if (!fresh) it->second = it->second + prob;
  }
  return pmf;
}

std::map<long long, double> OracleTable::pmf(const Probabilities& probs) const {
  return pmf_impl<double>(probs);
}
std::map<long long, Rational> OracleTable::pmf_exact(
    const Probabilities& probs) const {
  return pmf_impl<Rational>(probs);
}

OracleTable::Moments OracleTable::moments(const Probabilities& probs) const {
  auto pmf = pmf_impl<double>(probs);
  double mean = 0;
  for (auto& [z, pr] : pmf) mean += static_cast<double>(z) * pr;
  double var = 0, m4 = 0;
  for (auto& [z, pr] : pmf) {
    double d = static_cast<double>(z) - mean;
    var += pr * d * d;
    m4 += pr * d * d * d * d;
  }
  Moments out{mean, var, m4, 0.0};
  out.excess_kurtosis = var > 0 ? m4 / (var * var) - 3.0 : 0.0;
  return out;
}

OracleTable::MomentsExact OracleTable::moments_exact(
    const Probabilities& probs) const {
  auto pmf = pmf_impl<Rational>(probs);
  Rational mean(0);
  for (auto& [z, pr] : pmf) mean += Rational(z) * pr;
  Rational var(0), m4(0);
  for (auto& [z, pr] : pmf) {
    Rational d = Rational(z) - mean;
    Rational d2 = d * d;
    var += pr * d2;
    m4 += pr * d2 * d2;
  }
  return MomentsExact{mean, var, m4};
}

std::map<long long, double> pmf_oracle(const Pattern& p, int n,
                                       const Probabilities& probs) {
  return OracleTable(p, n).pmf(probs);
}
std::map<long long, Rational> pmf_oracle_exact(const Pattern& p, int n,
                                               const Probabilities& probs) {
  return OracleTable(p, n).pmf_exact(probs);
}

// ------------------------------------------------------------ surrogates

SurrogateReport surrogates(const Pattern& p, int n, const Probabilities& probs) {
  Pattern pat = remove_isolated_vertices(p).first;
  const double ln_n = std::log(static_cast<double>(n));
  auto [lpH, lqH] = log_presence_products(pat.size_multiset(), probs);
  (void)lqH;

  SurrogateReport r{};
  r.log_mean_surrogate = pat.vertex_count() * ln_n + lpH;
  r.mean_surrogate = std::exp(r.log_mean_surrogate);

  auto subs = sub_patterns(pat);
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  double sparse = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const Pattern& F = subs[i].pattern;
    auto [lpF, lqF] = log_presence_products(F.size_multiset(), probs);
    double term = -F.vertex_count() * ln_n + lqF - lpF;
    if (term > best) {
      best = term;
      best_i = i;
    }
    bool all_le_half = true;
    for (int s : F.size_multiset())
      if (probs.at(s).p > 0.5) {
        all_le_half = false;
        break;
      }
    if (all_le_half)
      sparse = std::max(sparse, -(F.vertex_count() * ln_n + lpF));
  }
  double dense = -std::numeric_limits<double>::infinity();
  for (const auto& e : pat.edges()) {
    const ProbEntry& pe = probs.at(static_cast<int>(e.size()));
    if (pe.p > 0.5)
      dense = std::max(dense,
                       pe.log_q - static_cast<double>(e.size()) * ln_n);
  }
  r.log_variance_surrogate = 2 * lpH + 2 * pat.vertex_count() * ln_n + best;
  r.variance_surrogate = std::exp(r.log_variance_surrogate);
  r.argmax_subset = best_i;
  r.argmax_signature = subs[best_i].pattern.signature();
  r.sparse_term_log = sparse;
  r.dense_term_log = dense;
  return r;
}

}  // namespace hypercount
