#include "hypercount/prob.hpp"

#include <algorithm>
#include <cmath>

namespace hypercount {

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

// parses "c" or "c*n^-a"; returns (c, alpha, is_power)
std::tuple<Rational, Rational, bool> parse_power_term(const std::string& t) {
  auto star = t.find("*n^-");
  if (star == std::string::npos) {
    auto caret = t.find("n^-");
    if (caret == 0)  // bare "n^-a"
      return {Rational(1), parse_rational(t.substr(3)), true};
    return {parse_rational(t), Rational(0), false};
  }
  return {parse_rational(t.substr(0, star)),
          parse_rational(t.substr(star + 4)), true};
}

}  // namespace

SizeSchedule parse_schedule(const std::string& text) {
  std::string s = strip_spaces(text);
  if (s.empty()) throw Error("empty schedule");
  SizeSchedule out;
  bool complement = false;
  if (s.size() > 2 && s[0] == '1' && s[1] == '-') {
    complement = true;
    s = s.substr(2);
  }
  auto [c, alpha, is_power] = parse_power_term(s);
  if (!is_power) {
    if (complement) {
      out.form = SizeSchedule::Form::ConstQ;
      out.c = c;
    } else {
      out.form = SizeSchedule::Form::ConstP;
      out.c = c;
    }
    out.alpha = Rational(0);
    return out;
  }
  out.c = c;
  out.alpha = alpha;
  out.form = complement ? SizeSchedule::Form::ConstQ /*placeholder*/
                        : SizeSchedule::Form::PowP;
  if (complement) out.form = SizeSchedule::Form::PowQ;
  return out;
}

std::string schedule_to_string(const SizeSchedule& s) {
  using Form = SizeSchedule::Form;
  switch (s.form) {
    case Form::ConstP:
      return rational_to_string(s.c);
    case Form::ConstQ:
      return "1-" + rational_to_string(s.c);
    case Form::PowP:
      return rational_to_string(s.c) + "*n^-" + rational_to_string(s.alpha);
    case Form::PowQ:
      return "1-" + rational_to_string(s.c) + "*n^-" +
             rational_to_string(s.alpha);
  }
  throw Error("unreachable");
}

const ProbEntry& Probabilities::at(int size) const {
  auto it = table_.find(size);
  if (it == table_.end())
    throw Error("no probability declared for edge size " +
                std::to_string(size));
  return it->second;
}

bool Probabilities::homogeneous(const std::vector<int>& sizes) const {
  if (sizes.empty()) return true;
  const ProbEntry& first = at(sizes.front());
  for (int s : sizes) {
    const ProbEntry& e = at(s);
    if (e.exact && first.exact) {
      if (e.p_rat != first.p_rat) return false;
    } else if (e.p != first.p || e.q != first.q) {
      return false;
    }
  }
  return true;
}

bool Probabilities::all_exact(const std::vector<int>& sizes) const {
  return std::all_of(sizes.begin(), sizes.end(),
                     [&](int s) { return at(s).exact; });
}

ProbEntry entry_from_p(const Rational& p) {
  if (!(p > 0 && p < 1)) throw Error("probability must lie in (0,1)");
  ProbEntry e;
  e.exact = true;
  e.p_rat = p;
  e.q_rat = Rational(1) - p;
  e.p = to_double(e.p_rat);
  e.q = to_double(e.q_rat);
  e.log_p = std::log(e.p);
  e.log_q = std::log(e.q);
  // refine logs near the endpoints using the exact complement
  if (e.p > 0.9) e.log_p = std::log1p(-e.q);
  if (e.q > 0.9) e.log_q = std::log1p(-e.p);
  return e;
}

ProbEntry entry_from_q(const Rational& q) {
  ProbEntry e = entry_from_p(Rational(1) - q);
  // entry_from_p already rebuilt both sides exactly
  return e;
}

ProbEntry entry_from_p_double(double p) {
  if (!(p > 0 && p < 1)) throw Error("probability must lie in (0,1)");
  ProbEntry e;
  e.exact = false;
  e.p = p;
  e.q = 1 - p;
  e.log_p = std::log(p);
  e.log_q = std::log1p(-p);
  return e;
}

ProbEntry entry_from_q_double(double q) {
  if (!(q > 0 && q < 1)) throw Error("probability must lie in (0,1)");
  ProbEntry e;
  e.exact = false;
  e.q = q;
  e.p = 1 - q;
  e.log_q = std::log(q);
  e.log_p = std::log1p(-q);
  return e;
}

void ProbabilitySpec::set(int size, SizeSchedule s) {
  if (size < 1) throw Error("edge size must be at least 1");
  entries_[size] = std::move(s);
}

Probabilities ProbabilitySpec::evaluate(long long n) const {
  if (n < 1) throw Error("n must be positive");
  Probabilities out;
  using Form = SizeSchedule::Form;
  for (const auto& [size, sched] : entries_) {
    switch (sched.form) {
      case Form::ConstP:
        out.set(size, entry_from_p(sched.c));
        break;
      case Form::ConstQ:
        out.set(size, entry_from_q(sched.c));
        break;
      case Form::PowP:
      case Form::PowQ: {
        const bool is_p = sched.form == Form::PowP;
        if (denominator(sched.alpha) == 1) {
          Rational v = sched.c / rational_pow(Rational(n),
                                              static_cast<long>(numerator(sched.alpha)));
          if (!(v > 0 && v < 1))
            throw Error("schedule for size " + std::to_string(size) +
                        " leaves (0,1) at n=" + std::to_string(n));
          out.set(size, is_p ? entry_from_p(v) : entry_from_q(v));
        } else {
          double v = to_double(sched.c) *
                     std::pow(static_cast<double>(n), -to_double(sched.alpha));
          if (!(v > 0 && v < 1))
            throw Error("schedule for size " + std::to_string(size) +
                        " leaves (0,1) at n=" + std::to_string(n));
          out.set(size, is_p ? entry_from_p_double(v) : entry_from_q_double(v));
        }
        break;
      }
    }
  }
  return out;
}

void ProbabilitySpec::set_from_string(const std::string& assignment) {
  std::string s = strip_spaces(assignment);
  auto eq = s.find('=');
  if (eq == std::string::npos || eq < 2 || (s[0] != 'p' && s[0] != 'q'))
    throw Error("expected pK=... or qK=..., got '" + assignment + "'");
  const bool is_q = s[0] == 'q';
  int size = 0;
  try {
    size = std::stoi(s.substr(1, eq - 1));
  } catch (...) {
    throw Error("bad edge size in '" + assignment + "'");
  }
  SizeSchedule sched = parse_schedule(s.substr(eq + 1));
  if (is_q) {
    // flip the declared side: qK=v stores the complement exactly
    using Form = SizeSchedule::Form;
    switch (sched.form) {
      case Form::ConstP: sched.form = Form::ConstQ; break;
      case Form::ConstQ: sched.form = Form::ConstP; break;
      case Form::PowP:   sched.form = Form::PowQ;   break;
      case Form::PowQ:   sched.form = Form::PowP;   break;
    }
  }
  set(size, sched);
}

std::map<int, std::string> ProbabilitySpec::to_strings() const {
  std::map<int, std::string> out;
  for (const auto& [size, sched] : entries_)
    out[size] = schedule_to_string(sched);
  return out;
}

ProbabilitySpec ProbabilitySpec::from_strings(
    const std::map<int, std::string>& m) {
  ProbabilitySpec spec;
  for (const auto& [size, text] : m) spec.set(size, parse_schedule(text));
  return spec;
}

}  // namespace hypercount
