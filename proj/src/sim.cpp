#include "hypercount/sim.hpp"

#include <algorithm>
#include <thread>

#include "hypercount/rng.hpp"

namespace hypercount {

std::vector<std::uint32_t> sample_relevant_edge_ids(const EdgeUniverse& u,
                                                    const Probabilities& probs,
                                                    std::uint64_t seed,
                                                    std::uint64_t rep) {
  std::vector<std::uint32_t> out;
  for (std::size_t s = 0; s < u.sizes().size(); ++s) {
    const int size = u.sizes()[s];
    const double q = probs.at(size).q;
    const std::uint64_t off = u.size_offset(size);
    const std::uint64_t cnt = u.size_count(size);
    for (std::uint64_t b = 0; b < cnt; ++b) {
      // absence event drawn with probability q; no 1-p cancellation
      if (u01(seed, rep, off + b) >= q)
        out.push_back(static_cast<std::uint32_t>(off + b));
    }
  }
  return out;
}

std::vector<Edge> sample_relevant_edges(int n, const Probabilities& probs,
                                        const std::vector<int>& sizes,
                                        std::uint64_t seed, std::uint64_t rep) {
  for (int s : sizes)
    if (!probs.has(s))
      throw Error("no probability declared for edge size " + std::to_string(s));
  EdgeUniverse u(n, sizes);
  std::vector<Edge> out;
  for (std::uint32_t id : sample_relevant_edge_ids(u, probs, seed, rep))
    out.push_back(u.edge_of(id));
  return out;
}

long long count_in_sample(const CopyTable& copies,
                          const std::vector<std::uint64_t>& realized_bits) {
  long long z = 0;
  for (std::uint64_t i = 0; i < copies.copy_count; ++i) {
    bool all = true;
    for (std::uint32_t id : copies.copy(i)) {
      if (!((realized_bits[id >> 6] >> (id & 63)) & 1)) {
        all = false;
        break;
      }
    }
    z += all;
  }
  return z;
}

long long count_in_sample(const Pattern& p, int n,
                          const std::vector<Edge>& realized) {
  Pattern pat = remove_isolated_vertices(p).first;
  EdgeUniverse u(n, pat.sizes());
  CopyTable copies = build_copy_table(pat, u);
  std::vector<std::uint64_t> bits((u.total() + 63) / 64, 0);
  for (const Edge& e : realized) {
    Edge sorted = e;
    std::sort(sorted.begin(), sorted.end());
    // edges of sizes the pattern never uses cannot change the count
    bool relevant = std::count(pat.sizes().begin(), pat.sizes().end(),
                               static_cast<int>(sorted.size())) > 0;
    if (!relevant) continue;
    std::uint64_t id = u.id_of(sorted);
    bits[id >> 6] |= 1ull << (id & 63);
  }
  return count_in_sample(copies, bits);
}

SampleBatch simulate_copy_counts(const Pattern& p, int n,
                                 const ProbabilitySpec& spec,
                                 std::uint64_t reps, std::uint64_t seed,
                                 int workers) {
  if (reps < 1) throw Error("need at least one replication");
  Pattern pat = remove_isolated_vertices(p).first;
  Probabilities probs = spec.evaluate(n);
  for (int s : pat.sizes()) probs.at(s);  // validate coverage

  EdgeUniverse u(n, pat.sizes());
  CopyTable copies = build_copy_table(pat, u);

  SampleBatch batch;
  batch.seed = seed;
  batch.reps = reps;
  batch.n = n;
  batch.pattern_signature = pat.signature();
  batch.spec_strings = spec.to_strings();
  batch.values.assign(reps, 0);

  const int nw = std::max(1, workers);
  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> bits((u.total() + 63) / 64);
    for (std::uint64_t r = begin; r < end; ++r) {
      std::fill(bits.begin(), bits.end(), 0);
      for (std::uint32_t id : sample_relevant_edge_ids(u, probs, seed, r))
        bits[id >> 6] |= 1ull << (id & 63);
      batch.values[r] = count_in_sample(copies, bits);
    }
  };

  if (nw == 1) {
    run(0, reps);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (reps + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
      std::uint64_t b = std::min<std::uint64_t>(w * chunk, reps);
      std::uint64_t e = std::min<std::uint64_t>(b + chunk, reps);
      if (b < e) pool.emplace_back(run, b, e);
    }
    for (auto& t : pool) t.join();
  }
  return batch;
}

std::vector<double> standardize(const std::vector<long long>& values,
                                double mean, double sd) {
  if (!(sd > 0)) throw Error("degenerate count: standard deviation must be positive");
  std::vector<double> out;
  out.reserve(values.size());
  for (long long v : values) out.push_back((static_cast<double>(v) - mean) / sd);
  return out;
}

}  // namespace hypercount
