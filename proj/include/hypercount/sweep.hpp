#ifndef HYPERCOUNT_SWEEP_HPP
#define HYPERCOUNT_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hypercount/pattern.hpp"
#include "hypercount/prob.hpp"

namespace hypercount {

// Requested output families for a sweep.
inline const std::vector<std::string> kSweepOutputs = {
    "moments", "bounds", "conditions", "distances", "hoeffding-verify",
    "kurtosis"};

struct ExperimentConfig {
  std::string pattern_file;
  std::map<int, std::string> schedules;  // size -> schedule string
  std::vector<long long> n_grid;         // strictly increasing
  std::uint64_t reps = 10000;
  std::uint64_t seed = 1;
  std::vector<std::string> outputs;
  std::string out_dir;
  int workers = 1;
  double delta = 0.01;  // DKW confidence parameter

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& json_text);
std::string serialize_config(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);
void validate_config(const ExperimentConfig& config, const Pattern& pattern);

struct ResultRow {
  long long n = 0;
  std::string quantity;
  double value = 0;
  std::string witness;
  double lower = 0, upper = 0;  // confidence band where applicable
  bool has_band = false;
  std::string status = "ok";  // or "skipped: guard"
};

std::vector<ResultRow> run_sweep(const ExperimentConfig& config);

// results.json plus one CSV per quantity (columns n,value,lower,upper),
// rows ordered by (quantity, n); returns the file names written.
std::vector<std::string> emit_plot_data(const std::vector<ResultRow>& rows,
                                        const std::filesystem::path& dir);

// full table CSV with columns n,quantity,value,witness[,status]
std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string rows_to_json(const std::vector<ResultRow>& rows);

// deterministic shortest-faithful formatting used in all file output
std::string format_double(double v);

bool any_guard_skips(const std::vector<ResultRow>& rows);

}  // namespace hypercount

#endif
