#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace sympack {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Formats a rational as "p/q" ("p" when q == 1).
inline std::string rat_to_string(const Rat& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Quotient of two integers. The (num, den) constructor of cpp_rational
/// rejects negative denominators on this Boost version, so the sign is
/// settled first.
inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(num, den);
}

/// Parses "p/q", "p", or a plain decimal integer string.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

/// Exact comparison of a nonnegative rational r against 1/sqrt(k):
/// returns -1, 0, +1 for r < , = , > k^{-1/2}.
inline int compare_with_inv_sqrt(const Rat& r, long long k) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  if (r < 0) return -1;
  const Rat lhs = r * r * k;  // r^2 k vs 1
  if (lhs < 1) return -1;
  if (lhs == 1) return 0;
  return 1;
}

}  // namespace sympack
