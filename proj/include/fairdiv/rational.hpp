#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "fairdiv/errors.hpp"

namespace fairdiv {

/// Exact rational number. Every utility, coefficient and demand uses it.
using Rational = mpq_class;

/// Arbitrary precision integer, used for matching weights.
using BigInt = mpz_class;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

/// Parses "p", "-p", "p/q" or "-p/q" (decimal, q > 0). Anything else,
/// including decimal points and exponents, is rejected.
inline Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!detail::all_digits(num) || !detail::all_digits(den)) {
    throw FormatError("malformed rational '" + std::string(text) + "'");
  }
  BigInt p(std::string(num), 10);
  BigInt q(std::string(den), 10);
  if (q == 0) {
    throw FormatError("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(negative ? BigInt(-p) : p, q);
  r.canonicalize();
  return r;
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string format_rational(const Rational& r) { return r.get_str(10); }

}  // namespace fairdiv
