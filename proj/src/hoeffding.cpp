#include "hypercount/hoeffding.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hypercount/combin.hpp"
#include "hypercount/sim.hpp"

namespace hypercount {

namespace {

constexpr std::uint64_t kTermEnumerationGuard = 20'000'000;

std::vector<std::uint64_t> realized_bitmap(const EdgeUniverse& u,
                                           const std::vector<Edge>& realized) {
  std::vector<std::uint64_t> bits((u.total() + 63) / 64, 0);
  for (const Edge& e : realized) {
    Edge sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (!std::count(u.sizes().begin(), u.sizes().end(),
                    static_cast<int>(sorted.size())))
      continue;  // sizes outside the pattern never enter any term
    std::uint64_t id = u.id_of(sorted);
    bits[id >> 6] |= 1ull << (id & 63);
  }
  return bits;
}

// sum over placements B of `sub` of prod_{b in B} (X_b - p_b)/p_b
double placement_sum(const Pattern& sub, const EdgeUniverse& u,
                     const Probabilities& probs,
                     const std::vector<std::uint64_t>& realized_bits) {
  double total = 0;
  enumerate_copies(sub, u.n(), [&](const PlacedCopy& c) {
    double prod = 1;
    for (const Edge& e : c.edges) {
      const ProbEntry& pe = probs.at(static_cast<int>(e.size()));
      std::uint64_t id = u.id_of(e);
      bool present = (realized_bits[id >> 6] >> (id & 63)) & 1;
      prod *= present ? pe.q / pe.p : -1.0;
    }
    total += prod;
    return true;
  });
  return total;
}

}  // namespace

std::uint64_t completion_count_fixed(const Pattern& sub, const Pattern& whole) {
  if (sub.has_isolated_vertices() || whole.has_isolated_vertices())
    throw Error("completion counts expect isolated-free patterns");
  const int vH = whole.vertex_count();
  if (sub.vertex_count() > vH) throw Error("sub-pattern larger than pattern");
  std::set<Edge> placed(sub.edges().begin(), sub.edges().end());
  std::uint64_t count = 0;
  enumerate_copies(whole, vH, [&](const PlacedCopy& c) {
    std::set<Edge> edges(c.edges.begin(), c.edges.end());
    bool contains = std::all_of(placed.begin(), placed.end(),
                                [&](const Edge& e) { return edges.count(e); });
    count += contains;
    return true;
  });
  return count;
}

std::uint64_t completion_count(const Pattern& sub, const Pattern& whole,
                               int n) {
  return completion_count_fixed(sub, whole) *
         binomial(static_cast<std::uint64_t>(n - sub.vertex_count()),
                  static_cast<std::uint64_t>(whole.vertex_count() -
                                             sub.vertex_count()));
}

double var_IF_exact(const Pattern& sub, const Pattern& whole, int n,
                    const Probabilities& probs, double var_z) {
  if (sub.edge_count() < 1) throw Error("sub-pattern needs an edge");
  if (!(var_z > 0)) throw Error("variance must be positive");
  auto [lpH, lqH] = log_presence_products(whole.size_multiset(), probs);
  (void)lqH;
  auto [lpF, lqF] = log_presence_products(sub.size_multiset(), probs);
  double nf = static_cast<double>(count_copies_total(sub, n));
  double cf = static_cast<double>(completion_count(sub, whole, n));
  return std::exp(2 * lpH) / var_z * std::exp(lqF - lpF) * nf * cf * cf;
}

ProjectionReport projection_report(const Pattern& p, int n,
                                   const Probabilities& probs) {
  Pattern pat = remove_isolated_vertices(p).first;
  ProjectionReport report;
  report.var_z = variance_exact(pat, n, probs);
  report.var_per_level.assign(static_cast<std::size_t>(pat.edge_count()), 0.0);
  report.total = 0;
  for (const auto& cls : sub_pattern_classes(pat)) {
    ProjectionEntry entry{
        cls.pattern, cls.multiplicity, count_copies_total(cls.pattern, n),
        completion_count(cls.pattern, pat, n),
        var_IF_exact(cls.pattern, pat, n, probs, report.var_z)};
    report.var_per_level[static_cast<std::size_t>(cls.pattern.edge_count()) -
                         1] += entry.var_share;
    report.total += entry.var_share;
    report.classes.push_back(std::move(entry));
  }
  return report;
}

double var_Im(const Pattern& p, int n, const Probabilities& probs, int m) {
  Pattern pat = remove_isolated_vertices(p).first;
  if (m < 1 || m > pat.edge_count())
    throw Error("level out of range: m must lie in [1, " +
                std::to_string(pat.edge_count()) + "]");
  return projection_report(pat, n, probs)
      .var_per_level[static_cast<std::size_t>(m) - 1];
}

double projection_value(const Pattern& sub, const Pattern& whole, int n,
                        const Probabilities& probs,
                        const std::vector<std::uint64_t>& realized_bits,
                        double var_z) {
  EdgeUniverse u(n, whole.sizes());
  auto [lpH, lqH] = log_presence_products(whole.size_multiset(), probs);
  (void)lqH;
  double cf = static_cast<double>(completion_count(sub, whole, n));
  return std::exp(lpH) / std::sqrt(var_z) * cf *
         placement_sum(sub, u, probs, realized_bits);
}

std::pair<double, double> hoeffding_reconstruct(
    const Pattern& p, int n, const Probabilities& probs,
    const std::vector<Edge>& realized, double mean, double sd) {
  if (!(sd > 0)) throw Error("degenerate count: sd must be positive");
  Pattern pat = remove_isolated_vertices(p).first;
  EdgeUniverse u(n, pat.sizes());
  auto bits = realized_bitmap(u, realized);

  CopyTable copies = build_copy_table(pat, u);
  long long z = count_in_sample(copies, bits);
  double z_tilde = (static_cast<double>(z) - mean) / sd;

  auto classes = sub_pattern_classes(pat);
  std::uint64_t work = 0;
  for (const auto& cls : classes)
    work += count_copies_total(cls.pattern, n);
  if (work > kTermEnumerationGuard)
    throw GuardExceeded("term enumeration infeasible: " +
                        std::to_string(work) + " placements");

  auto [lpH, lqH] = log_presence_products(pat.size_multiset(), probs);
  (void)lqH;
  double sum = 0;
  for (const auto& cls : classes) {
    double cf = static_cast<double>(completion_count(cls.pattern, pat, n));
    sum += cf * placement_sum(cls.pattern, u, probs, bits);
  }
  sum *= std::exp(lpH) / sd;
  return {z_tilde, sum};
}

double alpha_exact(const Pattern& sub, const Pattern& whole, int n,
                   const Probabilities& probs) {
  Pattern hp = remove_isolated_vertices(sub).first;
  Pattern h = remove_isolated_vertices(whole).first;
  auto [lpH, lqH] = log_presence_products(h.size_multiset(), probs);
  auto [lpF, lqF] = log_presence_products(hp.size_multiset(), probs);
  (void)lqH;
  (void)lqF;
  double var_whole = variance_exact(h, n, probs);
  double var_sub = variance_exact(hp, n, probs);
  double cf = static_cast<double>(completion_count_fixed(hp, h));
  double choose = static_cast<double>(
      binomial(static_cast<std::uint64_t>(n - hp.vertex_count()),
               static_cast<std::uint64_t>(h.vertex_count() -
                                          hp.vertex_count())));
  return cf * choose * std::exp(lpH - lpF) *
         std::sqrt(var_sub / var_whole);
}

}  // namespace hypercount
