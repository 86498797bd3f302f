#include "hypercount/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

#include "hypercount/conditions.hpp"
#include "hypercount/distance.hpp"
#include "hypercount/hoeffding.hpp"
#include "hypercount/moments.hpp"
#include "hypercount/rng.hpp"
#include "hypercount/sim.hpp"

namespace hypercount {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j = json::parse(json_text);
  ExperimentConfig c;
  c.pattern_file = j.at("pattern").get<std::string>();
  for (auto& [key, value] : j.at("schedules").items())
    c.schedules[std::stoi(key)] = value.get<std::string>();
  c.n_grid = j.at("n_grid").get<std::vector<long long>>();
  if (j.contains("reps")) c.reps = j["reps"].get<std::uint64_t>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  c.outputs = j.at("outputs").get<std::vector<std::string>>();
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("workers")) c.workers = j["workers"].get<int>();
  if (j.contains("delta")) c.delta = j["delta"].get<double>();
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  j["pattern"] = c.pattern_file;
  json sched = json::object();
  for (const auto& [size, text] : c.schedules)
    sched[std::to_string(size)] = text;
  j["schedules"] = sched;
  j["n_grid"] = c.n_grid;
  j["reps"] = c.reps;
  j["seed"] = c.seed;
  j["outputs"] = c.outputs;
  j["out_dir"] = c.out_dir;
  j["workers"] = c.workers;
  j["delta"] = c.delta;
  return j.dump(2) + "\n";
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config(text);
}

void validate_config(const ExperimentConfig& c, const Pattern& pattern) {
  if (c.n_grid.empty()) throw Error("empty n grid");
  for (std::size_t i = 1; i < c.n_grid.size(); ++i)
    if (c.n_grid[i] <= c.n_grid[i - 1])
      throw Error("n grid must be strictly increasing");
  Pattern pat = remove_isolated_vertices(pattern).first;
  for (int s : pat.sizes())
    if (!c.schedules.count(s))
      throw Error("no schedule for edge size " + std::to_string(s));
  for (const auto& o : c.outputs)
    if (std::find(kSweepOutputs.begin(), kSweepOutputs.end(), o) ==
        kSweepOutputs.end())
      throw Error("unknown output kind: " + o);
}

namespace {

void push(std::vector<ResultRow>& rows, long long n, std::string quantity,
          double value, std::string witness = "") {
  ResultRow r;
  r.n = n;
  r.quantity = std::move(quantity);
  r.value = value;
  r.witness = std::move(witness);
  rows.push_back(std::move(r));
}

void push_skip(std::vector<ResultRow>& rows, long long n, std::string quantity,
               const std::string& why) {
  ResultRow r;
  r.n = n;
  r.quantity = std::move(quantity);
  r.value = std::nan("");
  r.status = "skipped: guard";
  r.witness = why;
  rows.push_back(std::move(r));
}

void moments_rows(std::vector<ResultRow>& rows, const Pattern& pat,
                  long long n, const Probabilities& probs) {
  const int ni = static_cast<int>(n);
  push(rows, n, "mean_exact", mean_exact(pat, ni, probs));
  try {
    PairTally pairs(pat, ni);
    push(rows, n, "variance_exact", pairs.variance(probs));
  } catch (const GuardExceeded& g) {
    push_skip(rows, n, "variance_exact", g.what());
  }
  try {
    FourthMomentTally fourth(pat, ni);
    double var = fourth.variance(probs);
    double m4 = fourth.fourth_central(probs);
    push(rows, n, "fourth_central_exact", m4);
    push(rows, n, "excess_kurtosis_exact", m4 / (var * var) - 3.0);
  } catch (const GuardExceeded& g) {
    push_skip(rows, n, "fourth_central_exact", g.what());
    push_skip(rows, n, "excess_kurtosis_exact", g.what());
  }
  SurrogateReport s = surrogates(pat, ni, probs);
  push(rows, n, "mean_surrogate", s.mean_surrogate);
  push(rows, n, "variance_surrogate", s.variance_surrogate,
       s.argmax_signature);
}

void bounds_rows(std::vector<ResultRow>& rows, const Pattern& pat, long long n,
                 const Probabilities& probs) {
  BoundBreakdown bw, bk;
  push(rows, n, "wasserstein_bound", bound_wasserstein(pat, n, probs, &bw),
       bw.witness);
  push(rows, n, "kolmogorov_bound", bound_kolmogorov(pat, n, probs, &bk),
       bk.witness);
  std::string w;
  push(rows, n, "bounded_p_bound", bound_bounded_p(pat, n, probs, &w), w);
  auto [s1, s2] = bound_sufficient(pat, n, probs);
  push(rows, n, "sufficient_bound_weighted", s1);
  push(rows, n, "sufficient_bound_plain", s2);
  push(rows, n, "jlr_bound", bound_jlr(pat, n, probs, &w), w);
}

void conditions_rows(std::vector<ResultRow>& rows, const Pattern& pat,
                     long long n, const Probabilities& probs) {
  ConditionReport r = clt_conditions(pat, n, probs);
  push(rows, n, "min_expected_scale", r.min_scale, r.min_scale_witness);
  for (const auto& e : r.per_edge)
    push(rows, n, "clt_edge_" + std::to_string(e.edge_index), e.total,
         "size=" + std::to_string(e.size));
  if (r.homogeneous) {
    push(rows, n, "homogeneous_tail", r.item2_tail);
    push(rows, n, "homogeneous_product", r.item3);
  }
}

void distances_rows(std::vector<ResultRow>& rows, const Pattern& pat,
                    long long n, const ProbabilitySpec& spec,
                    const Probabilities& probs, const ExperimentConfig& c) {
  const int ni = static_cast<int>(n);
  double mean = mean_exact(pat, ni, probs);
  double var;
  try {
    var = variance_exact(pat, ni, probs);
  } catch (const GuardExceeded& g) {
    push_skip(rows, n, "dk_empirical", g.what());
    push_skip(rows, n, "dw_empirical", g.what());
    return;
  }
  SampleBatch batch =
      simulate_copy_counts(pat, ni, spec, c.reps, c.seed, c.workers);
  auto z = standardize(batch.values, mean, std::sqrt(var));
  DistanceEstimate est = distances_from_samples(z, c.delta);
  ResultRow dk;
  dk.n = n;
  dk.quantity = "dk_empirical";
  dk.value = est.dk;
  dk.lower = std::max(0.0, est.dk - est.dkw);
  dk.upper = est.dk + est.dkw;
  dk.has_band = true;
  rows.push_back(dk);
  push(rows, n, "dw_empirical", est.dw);
}

void hoeffding_rows(std::vector<ResultRow>& rows, const Pattern& pat,
                    long long n, const Probabilities& probs,
                    const ExperimentConfig& c) {
  const int ni = static_cast<int>(n);
  try {
    ProjectionReport rep = projection_report(pat, ni, probs);
    push(rows, n, "projection_sum_abs_dev", std::abs(rep.total - 1.0));
    double mean = mean_exact(pat, ni, probs);
    double sd = std::sqrt(rep.var_z);
    std::uint64_t reps = std::min<std::uint64_t>(c.reps, 200);
    double worst = 0;
    for (std::uint64_t r = 0; r < reps; ++r) {
      auto realized =
          sample_relevant_edges(ni, probs, pat.sizes(), c.seed, r);
      auto [zt, sum] = hoeffding_reconstruct(pat, ni, probs, realized, mean, sd);
      worst = std::max(worst, std::abs(zt - sum));
    }
    push(rows, n, "reconstruction_worst_dev", worst);
  } catch (const GuardExceeded& g) {
    push_skip(rows, n, "projection_sum_abs_dev", g.what());
    push_skip(rows, n, "reconstruction_worst_dev", g.what());
  }
}

void kurtosis_rows(std::vector<ResultRow>& rows, const Pattern& pat,
                   long long n, const Probabilities& probs) {
  const int ni = static_cast<int>(n);
  if (!probs.homogeneous(pat.sizes())) {
    push_skip(rows, n, "kurtosis_surrogate",
              "kurtosis surrogate needs a homogeneous spec");
    return;
  }
  double p = probs.at(pat.sizes().front()).p;
  KurtosisSurrogate s = kurtosis_surrogate(pat, n, p);
  push(rows, n, "kurtosis_surrogate", s.value, s.witness);
  push(rows, n, "kurtosis_companion", s.companion);
  try {
    push(rows, n, "kurtosis_exact", excess_kurtosis_exact(pat, ni, probs));
  } catch (const GuardExceeded& g) {
    push_skip(rows, n, "kurtosis_exact", g.what());
  }
}

}  // namespace

std::vector<ResultRow> run_sweep(const ExperimentConfig& config) {
  Pattern input = Pattern::from_file(config.pattern_file);
  validate_config(config, input);
  Pattern pat = remove_isolated_vertices(input).first;
  ProbabilitySpec spec = ProbabilitySpec::from_strings(config.schedules);

  std::set<std::string> want(config.outputs.begin(), config.outputs.end());
  std::vector<ResultRow> rows;
  for (long long n : config.n_grid) {
    Probabilities probs = spec.evaluate(n);
    if (want.count("moments")) moments_rows(rows, pat, n, probs);
    if (want.count("bounds")) bounds_rows(rows, pat, n, probs);
    if (want.count("conditions")) conditions_rows(rows, pat, n, probs);
    if (want.count("distances"))
      distances_rows(rows, pat, n, spec, probs, config);
    if (want.count("hoeffding-verify"))
      hoeffding_rows(rows, pat, n, probs, config);
    if (want.count("kurtosis")) kurtosis_rows(rows, pat, n, probs);
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::string out = "n,quantity,value,witness,status\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + r.quantity + "," +
           format_double(r.value) + "," + r.witness + "," + r.status + "\n";
  }
  return out;
}

std::string rows_to_json(const std::vector<ResultRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["n"] = r.n;
    j["quantity"] = r.quantity;
    j["value"] = r.value;
    j["witness"] = r.witness;
    j["status"] = r.status;
    if (r.has_band) {
      j["lower"] = r.lower;
      j["upper"] = r.upper;
    }
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::vector<std::string> emit_plot_data(const std::vector<ResultRow>& rows,
                                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<ResultRow> sorted = rows;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ResultRow& a, const ResultRow& b) {
                     if (a.quantity != b.quantity) return a.quantity < b.quantity;
                     return a.n < b.n;
                   });
  std::vector<std::string> written;
  {
    std::ofstream out(dir / "results.json", std::ios::binary);
    out << rows_to_json(sorted);
    written.push_back("results.json");
  }
  {
    std::ofstream out(dir / "results.csv", std::ios::binary);
    out << rows_to_csv(sorted);
    written.push_back("results.csv");
  }
  std::string current;
  std::ofstream csv;
  for (const auto& r : sorted) {
    if (r.status != "ok") continue;
    if (r.quantity != current) {
      if (csv.is_open()) csv.close();
      current = r.quantity;
      csv.open(dir / (current + ".csv"), std::ios::binary);
      csv << "n,value,lower,upper\n";
      written.push_back(current + ".csv");
    }
    csv << r.n << "," << format_double(r.value);
    if (r.has_band)
      csv << "," << format_double(r.lower) << "," << format_double(r.upper);
    else
      csv << ",,";
    csv << "\n";
  }
  return written;
}

bool any_guard_skips(const std::vector<ResultRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) {
    return r.status != "ok";
  });
}

}  // namespace hypercount
