#include "hypercount/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace hypercount {

namespace {

BigInt ipow10(long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error("empty number");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw Error("division by zero in '" + text + "'");
    return num / den;
  }

  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');

  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  long exp10 = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      exp10 = std::strtol(s.c_str() + i + 1, nullptr, 10);
      break;
    } else {
      throw Error("cannot parse number '" + text + "'");
    }
  }
  if (!seen_digit) throw Error("cannot parse number '" + text + "'");

  // trim leading zeros; cpp_int would treat them as an octal prefix
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  if (digits.empty()) digits = "0";
  BigInt mant(digits);
  Rational r(mant, 1);
  long net = exp10 - frac_digits;
  if (net > 0)
    r *= Rational(ipow10(net), 1);
  else if (net < 0)
    r /= Rational(ipow10(-net), 1);
  if (neg) r = -r;
  return r;
}

std::string rational_to_string(const Rational& r) {
  BigInt num = numerator(r), den = denominator(r);
  // count factors of 2 and 5 in den
  BigInt d = den;
  long twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d == 1) {
    long digits = std::max(twos, fives);
    BigInt scaled = num;
    for (long i = 0; i < digits - twos; ++i) scaled *= 2;
    for (long i = 0; i < digits - fives; ++i) scaled *= 5;
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string t = scaled.str();
    std::string out;
    if (digits == 0) {
      out = t;
    } else {
      while (static_cast<long>(t.size()) <= digits) t.insert(t.begin(), '0');
      out = t.substr(0, t.size() - digits) + "." + t.substr(t.size() - digits);
    }
    return neg ? "-" + out : out;
  }
  return num.str() + "/" + den.str();
}

Rational rational_pow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (exp < 0) {
    if (base == 0) throw Error("zero to negative power");
    return Rational(1) / rational_pow(base, -exp);
  }
  Rational acc(1), b = base;
  long e = exp;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace hypercount
