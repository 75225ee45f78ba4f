#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ccg {

/// Exact rational scalar used for every cost, utility and potential value.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q"; the result is canonicalized. Throws ccg::Error(ParseError).
Rational parse_rational(std::string_view text);

/// "p" when integral, "p/q" otherwise.
std::string to_string(const Rational& value);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace ccg
