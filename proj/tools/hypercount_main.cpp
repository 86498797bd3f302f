#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypercount/conditions.hpp"
#include "hypercount/distance.hpp"
#include "hypercount/hoeffding.hpp"
#include "hypercount/moments.hpp"
#include "hypercount/sim.hpp"
#include "hypercount/sweep.hpp"

using namespace hypercount;
using nlohmann::json;

namespace {

ProbabilitySpec spec_from_args(const std::vector<std::string>& probs) {
  ProbabilitySpec spec;
  for (const auto& s : probs) spec.set_from_string(s);
  return spec;
}

std::string default_out_dir() {
  const char* env = std::getenv("HYPERCOUNT_OUT_DIR");
  return env ? env : ".";
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

json batch_to_json(const SampleBatch& b) {
  json meta;
  meta["n"] = b.n;
  meta["seed"] = b.seed;
  meta["reps"] = b.reps;
  meta["pattern"] = b.pattern_signature;
  json spec = json::object();
  for (const auto& [size, text] : b.spec_strings)
    spec[std::to_string(size)] = text;
  meta["spec"] = spec;
  json out;
  out["meta"] = meta;
  out["values"] = b.values;
  return out;
}

int run_simulate(const std::string& pattern_file, int n,
                 const std::vector<std::string>& probs, std::uint64_t reps,
                 std::uint64_t seed, const std::string& out,
                 const std::string& csv, int workers) {
  Pattern p = Pattern::from_file(pattern_file);
  ProbabilitySpec spec = spec_from_args(probs);
  SampleBatch batch = simulate_copy_counts(p, n, spec, reps, seed, workers);
  write_or_print(out, batch_to_json(batch).dump(2) + "\n");
  if (!csv.empty()) {
    std::string body = "value\n";
    for (long long v : batch.values) body += std::to_string(v) + "\n";
    write_or_print(csv, body);
  }
  return 0;
}

int run_exact(const std::string& pattern_file, int n,
              const std::vector<std::string>& probs, const std::string& mode,
              bool oracle, const std::string& out) {
  Pattern input = Pattern::from_file(pattern_file);
  Pattern p = remove_isolated_vertices(input).first;
  ProbabilitySpec spec = spec_from_args(probs);
  Probabilities table = spec.evaluate(n);

  json j;
  j["pattern"] = p.signature();
  j["n"] = n;
  json spec_json = json::object();
  for (const auto& [size, text] : spec.to_strings())
    spec_json[std::to_string(size)] = text;
  j["spec"] = spec_json;
  j["mode"] = mode;

  bool guard_skip = false;
  if (mode == "rational") {
    j["method"] = "formula";
    j["mean"] = rational_to_string(mean_exact_rat(p, n, table));
    try {
      FourthMomentTally t(p, n);
      Rational var = t.variance_exact(table);
      Rational m4 = t.fourth_central_exact(table);
      j["variance"] = rational_to_string(var);
      j["fourth_central"] = rational_to_string(m4);
      if (var > 0)
        j["excess_kurtosis"] =
            rational_to_string(m4 / (var * var) - Rational(3));
    } catch (const GuardExceeded& g) {
      j["guard"] = g.what();
      guard_skip = true;
    }
  } else if (mode == "float") {
    j["method"] = "formula";
    j["mean"] = mean_exact(p, n, table);
    try {
      FourthMomentTally t(p, n);
      double var = t.variance(table);
      double m4 = t.fourth_central(table);
      j["variance"] = var;
      j["fourth_central"] = m4;
      j["excess_kurtosis"] = m4 / (var * var) - 3.0;
    } catch (const GuardExceeded& g) {
      j["guard"] = g.what();
      guard_skip = true;
    }
  } else {
    throw Error("mode must be rational or float");
  }

  SurrogateReport s = surrogates(p, n, table);
  json sj;
  sj["mean_surrogate"] = s.mean_surrogate;
  sj["variance_surrogate"] = s.variance_surrogate;
  sj["argmax"] = s.argmax_signature;
  j["surrogates"] = sj;

  if (oracle) {
    OracleTable ot(p, n);
    auto m = ot.moments(table);
    json oj;
    oj["mean"] = m.mean;
    oj["variance"] = m.variance;
    oj["fourth_central"] = m.fourth_central;
    oj["excess_kurtosis"] = m.excess_kurtosis;
    j["oracle"] = oj;
  }
  write_or_print(out, j.dump(2) + "\n");
  return guard_skip ? 2 : 0;
}

int run_bounds(const std::string& pattern_file,
               const std::vector<std::string>& probs,
               const std::vector<long long>& grid, const std::string& out_dir) {
  ExperimentConfig c;
  c.pattern_file = pattern_file;
  for (const auto& s : probs) {
    ProbabilitySpec tmp;
    tmp.set_from_string(s);
    for (const auto& [size, text] : tmp.to_strings())
      c.schedules[size] = text;
  }
  c.n_grid = grid;
  c.outputs = {"bounds", "conditions"};
  c.out_dir = out_dir;
  auto rows = run_sweep(c);

  // grid-level trend: least-squares slope of the threshold quantity with
  // its limit classification
  if (grid.size() >= 2) {
    Pattern p = Pattern::from_file(pattern_file);
    ProbabilitySpec spec = ProbabilitySpec::from_strings(c.schedules);
    ThresholdReport t = threshold_classify(p, spec, grid);
    ResultRow row;
    row.n = grid.back();
    row.quantity = "threshold_slope";
    row.value = t.slope;
    row.witness = t.verdict == ThresholdVerdict::ToOne    ? "to_one"
                  : t.verdict == ThresholdVerdict::ToZero ? "to_zero"
                                                          : "inconclusive";
    rows.push_back(row);
  }

  emit_plot_data(rows, out_dir);
  std::cout << rows_to_csv(rows);
  return any_guard_skips(rows) ? 2 : 0;
}

int run_kurtosis(const std::string& pattern_file, int n,
                 const std::vector<std::string>& probs,
                 const std::string& out) {
  Pattern input = Pattern::from_file(pattern_file);
  Pattern p = remove_isolated_vertices(input).first;
  ProbabilitySpec spec = spec_from_args(probs);
  Probabilities table = spec.evaluate(n);
  if (!table.homogeneous(p.sizes()))
    throw Error("kurtosis surrogate needs a homogeneous spec");
  double ph = table.at(p.sizes().front()).p;
  KurtosisSurrogate s = kurtosis_surrogate(p, n, ph);
  json j;
  j["surrogate"] = s.value;
  j["companion"] = s.companion;
  j["witness"] = s.witness;
  int code = 0;
  try {
    j["excess_kurtosis_exact"] = excess_kurtosis_exact(p, n, table);
  } catch (const GuardExceeded& g) {
    j["guard"] = g.what();
    code = 2;
  }
  write_or_print(out, j.dump(2) + "\n");
  return code;
}

int run_distance(const std::string& samples_path, const std::string& pmf_path,
                 double delta, double mean_flag, double sd_flag,
                 const std::string& out) {
  json j;
  if (!samples_path.empty()) {
    std::ifstream in(samples_path);
    if (!in) throw Error("cannot open " + samples_path);
    json batch = json::parse(in);
    std::vector<double> z;
    if (batch.contains("standardized")) {
      z = batch["standardized"].get<std::vector<double>>();
    } else {
      std::vector<long long> values =
          batch.at("values").get<std::vector<long long>>();
      double mean = batch.contains("mean") ? batch["mean"].get<double>()
                                           : mean_flag;
      double sd = batch.contains("sd") ? batch["sd"].get<double>() : sd_flag;
      if (!(sd > 0))
        throw Error("need --mean/--sd (or mean/sd fields) to standardize");
      z = standardize(values, mean, sd);
    }
    DistanceEstimate est = distances_from_samples(z, delta);
    j["dk"] = est.dk;
    j["dw"] = est.dw;
    j["m"] = est.m;
    j["delta"] = est.delta;
    j["dkw_radius"] = est.dkw;
  } else if (!pmf_path.empty()) {
    std::ifstream in(pmf_path);
    if (!in) throw Error("cannot open " + pmf_path);
    json pj = json::parse(in);
    std::map<long long, double> pmf;
    for (auto& [key, value] : pj.at("pmf").items())
      pmf[std::stoll(key)] = value.get<double>();
    double mean = pj.at("mean").get<double>();
    double sd = pj.at("sd").get<double>();
    if (!(sd > 0)) throw Error("degenerate count: sd must be positive");
    DiscreteDist d;
    for (auto& [z, pr] : pmf)
      d.atoms.emplace_back((static_cast<double>(z) - mean) / sd, pr);
    d.normalize_sort();
    j["dk"] = dk_exact(d);
    j["dw"] = dw_exact(d);
    j["largest_atom"] = d.largest_atom();
  } else {
    throw Error("need --samples or --pmf");
  }
  write_or_print(out, j.dump(2) + "\n");
  return 0;
}

int run_verify_hoeffding(const std::string& pattern_file, int n,
                         const std::vector<std::string>& probs,
                         std::uint64_t reps, std::uint64_t seed,
                         const std::string& out) {
  Pattern input = Pattern::from_file(pattern_file);
  Pattern p = remove_isolated_vertices(input).first;
  ProbabilitySpec spec = spec_from_args(probs);
  Probabilities table = spec.evaluate(n);

  ProjectionReport rep = projection_report(p, n, table);
  double mean = mean_exact(p, n, table);
  double sd = std::sqrt(rep.var_z);

  double worst_recon = 0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    auto realized = sample_relevant_edges(n, table, p.sizes(), seed, r);
    auto [zt, sum] = hoeffding_reconstruct(p, n, table, realized, mean, sd);
    worst_recon = std::max(worst_recon, std::abs(zt - sum));
  }

  // the pointwise sum identity is exact for single-edge sub-patterns and
  // for the pattern itself; multi-edge proper sub-patterns obey a
  // class-wise proportional version instead
  double worst_alpha = 0;
  for (const auto& cls : sub_pattern_classes(p)) {
    const Pattern& sub = cls.pattern;
    if (sub.edge_count() != 1 && !(sub == p)) continue;
    double alpha = alpha_exact(sub, p, n, table);
    double sub_mean = mean_exact(sub, n, table);
    double sub_sd = std::sqrt(variance_exact(sub, n, table));
    EdgeUniverse u(n, p.sizes());
    for (std::uint64_t r = 0; r < std::min<std::uint64_t>(reps, 50); ++r) {
      auto ids = sample_relevant_edge_ids(u, table, seed, r);
      std::vector<std::uint64_t> bits((u.total() + 63) / 64, 0);
      std::vector<Edge> realized;
      for (auto id : ids) {
        bits[id >> 6] |= 1ull << (id & 63);
        realized.push_back(u.edge_of(id));
      }
      double lhs = 0;
      for (const auto& inner : sub_pattern_classes(sub)) {
        // match inner classes of the sub-pattern to classes of p
        double v = projection_value(inner.pattern, p, n, table, bits, rep.var_z);
        lhs += v;
      }
      long long zsub = count_in_sample(sub, n, realized);
      double rhs = alpha * ((static_cast<double>(zsub) - sub_mean) / sub_sd);
      worst_alpha = std::max(worst_alpha, std::abs(lhs - rhs));
    }
  }

  json j;
  j["projection_sum"] = rep.total;
  j["projection_sum_abs_dev"] = std::abs(rep.total - 1.0);
  j["reconstruction_worst_dev"] = worst_recon;
  j["alpha_identity_worst_dev"] = worst_alpha;
  bool pass = std::abs(rep.total - 1.0) < 1e-9 && worst_recon < 1e-8 &&
              worst_alpha < 1e-8;
  j["pass"] = pass;
  write_or_print(out, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

int run_sweep_cmd(const std::string& config_path, int workers_override) {
  ExperimentConfig c = load_config(config_path);
  if (workers_override > 0) c.workers = workers_override;
  if (c.out_dir.empty()) c.out_dir = default_out_dir();
  auto rows = run_sweep(c);
  emit_plot_data(rows, c.out_dir);
  std::cerr << "wrote " << rows.size() << " rows to " << c.out_dir << "\n";
  return any_guard_skips(rows) ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subhypergraph count statistics in inhomogeneous random hypergraphs"};
  app.require_subcommand(1);

  std::string pattern_file, out = "-", csv, mode = "float";
  std::vector<std::string> probs;
  int n = 0, workers = 1;
  std::uint64_t reps = 10000, seed = 1;
  bool oracle = false;
  std::vector<long long> grid;
  double delta = 0.01;
  std::string samples_path, pmf_path, config_path;

  auto add_common = [&](CLI::App* cmd, bool needs_n) {
    cmd->add_option("--pattern", pattern_file, "pattern file")->required();
    if (needs_n) cmd->add_option("-n,--n", n, "number of vertices")->required();
    cmd->add_option("--prob,-p", probs,
                    "pK=VAL | qK=VAL | pK=c*n^-a | pK=1-c*n^-a (repeatable)")
        ->required();
  };

  auto* sim = app.add_subcommand("simulate", "Monte Carlo copy counts");
  add_common(sim, true);
  sim->add_option("--reps", reps, "replications");
  sim->add_option("--seed", seed, "RNG seed");
  sim->add_option("--out", out, "output JSON path or -");
  sim->add_option("--csv", csv, "optional CSV path");
  sim->add_option("--workers", workers, "worker threads");

  auto* exact = app.add_subcommand("exact", "exact and surrogate moments");
  add_common(exact, true);
  exact->add_option("--mode", mode, "rational|float");
  exact->add_flag("--oracle", oracle, "cross-check with the state oracle");
  exact->add_option("--out", out, "output JSON path or -");

  auto* bounds = app.add_subcommand("bounds", "normality bounds over an n-grid");
  bounds->add_option("--pattern", pattern_file, "pattern file")->required();
  bounds->add_option("--prob,-p", probs, "schedules per size")->required();
  bounds->add_option("--n-grid", grid, "n values")->required()->delimiter(',');
  std::string out_dir = default_out_dir();
  bounds->add_option("--out-dir", out_dir, "output directory");

  auto* kurt = app.add_subcommand("kurtosis", "kurtosis surrogate and exact value");
  add_common(kurt, true);
  kurt->add_option("--out", out, "output JSON path or -");

  auto* dist = app.add_subcommand("distance", "distances to the standard normal");
  double mean_flag = 0, sd_flag = 0;
  dist->add_option("--samples", samples_path, "SampleBatch JSON");
  dist->add_option("--pmf", pmf_path, "exact pmf JSON with mean/sd");
  dist->add_option("--mean", mean_flag, "mean used to standardize --samples");
  dist->add_option("--sd", sd_flag, "sd used to standardize --samples");
  dist->add_option("--delta", delta, "DKW confidence parameter");
  dist->add_option("--out", out, "output JSON path or -");

  auto* verify = app.add_subcommand("verify", "identity checks");
  auto* vh = verify->add_subcommand("hoeffding",
                                    "decomposition identities on sampled data");
  add_common(vh, true);
  vh->add_option("--reps", reps, "sampled realizations");
  vh->add_option("--seed", seed, "RNG seed");
  vh->add_option("--out", out, "output JSON path or -");

  auto* sweep = app.add_subcommand("sweep", "config-driven experiment sweep");
  sweep->add_option("--config", config_path, "config JSON")->required();
  int sweep_workers = 0;
  sweep->add_option("--workers", sweep_workers, "override worker count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed())
      return run_simulate(pattern_file, n, probs, reps, seed, out, csv, workers);
    if (exact->parsed())
      return run_exact(pattern_file, n, probs, mode, oracle, out);
    if (bounds->parsed()) return run_bounds(pattern_file, probs, grid, out_dir);
    if (kurt->parsed()) return run_kurtosis(pattern_file, n, probs, out);
    if (dist->parsed())
      return run_distance(samples_path, pmf_path, delta, mean_flag, sd_flag, out);
    if (verify->parsed())
      return run_verify_hoeffding(pattern_file, n, probs, reps, seed, out);
    if (sweep->parsed()) return run_sweep_cmd(config_path, sweep_workers);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
