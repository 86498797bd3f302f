#ifndef HYPERCOUNT_RATIONAL_HPP
#define HYPERCOUNT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "hypercount/common.hpp"

namespace hypercount {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "0.25", "1e-3", "-2", or "3/7" into an exact rational.
Rational parse_rational(const std::string& text);

// Rational -> shortest faithful text: decimal when the denominator is a
// product of 2s and 5s, "num/den" otherwise.
std::string rational_to_string(const Rational& r);

inline double to_double(const Rational& r) { return static_cast<double>(r); }

Rational rational_pow(const Rational& base, long exp);

}  // namespace hypercount

#endif
