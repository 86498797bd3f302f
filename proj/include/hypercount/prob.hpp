#ifndef HYPERCOUNT_PROB_HPP
#define HYPERCOUNT_PROB_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypercount/common.hpp"
#include "hypercount/rational.hpp"

namespace hypercount {

// Per-size edge probability, either a constant or a power schedule in n.
// Near-one probabilities are declared and stored through their complement
// q, so products of complements never go through 1 - p cancellation.
struct SizeSchedule {
  enum class Form { ConstP, ConstQ, PowP, PowQ };  // PowP: p = c * n^-a
  Form form = Form::ConstP;
  Rational c = Rational(1, 2);
  Rational alpha = Rational(0);  // exponent; exact when integral

  bool operator==(const SizeSchedule&) const = default;
};

// Grammar: "0.5", "q=..." handled by callers via the key; value forms are
// "c", "c*n^-a", and "1-c*n^-a" (whitespace-insensitive, fractions allowed).
SizeSchedule parse_schedule(const std::string& text);
std::string schedule_to_string(const SizeSchedule& s);

// A probability with its complement carried exactly alongside.
struct ProbEntry {
  double p = 0, q = 0;        // q = 1 - p, kept independently
  double log_p = 0, log_q = 0;
  bool exact = false;         // rational forms available
  Rational p_rat, q_rat;
};

// Evaluated per-size table at a fixed n.
class Probabilities {
 public:
  void set(int size, ProbEntry e) { table_[size] = std::move(e); }
  bool has(int size) const { return table_.count(size) != 0; }
  const ProbEntry& at(int size) const;
  const std::map<int, ProbEntry>& table() const { return table_; }
  // true when every listed size carries the same probability
  bool homogeneous(const std::vector<int>& sizes) const;
  bool all_exact(const std::vector<int>& sizes) const;

 private:
  std::map<int, ProbEntry> table_;
};

class ProbabilitySpec {
 public:
  ProbabilitySpec() = default;
  void set(int size, SizeSchedule s);
  bool has(int size) const { return entries_.count(size) != 0; }
  const std::map<int, SizeSchedule>& entries() const { return entries_; }

  Probabilities evaluate(long long n) const;

  // "p2=0.5", "q1=1e-3", "p2=1-0.25*n^-2", ... (assignment form)
  void set_from_string(const std::string& assignment);
  std::map<int, std::string> to_strings() const;
  static ProbabilitySpec from_strings(const std::map<int, std::string>& m);

  bool operator==(const ProbabilitySpec&) const = default;

 private:
  std::map<int, SizeSchedule> entries_;
};

// Entry from exact rational p (q = 1 - p computed exactly).
ProbEntry entry_from_p(const Rational& p);
ProbEntry entry_from_q(const Rational& q);
// Float-only entry (schedules with irrational exponents).
ProbEntry entry_from_p_double(double p);
ProbEntry entry_from_q_double(double q);

}  // namespace hypercount

#endif
