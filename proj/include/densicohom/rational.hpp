#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

#include "densicohom/errors.hpp"

namespace densicohom {

// Exact scalars. GMP keeps mpq_class canonical (positive denominator,
// coprime parts) through arithmetic; construction goes through frac() or
// parse_rational() so the invariant holds from the start.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational frac(long num, long den = 1) {
  if (den == 0) throw invalid_parameter("rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational frac(const Integer& num, const Integer& den) {
  if (den == 0) throw invalid_parameter("rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// True iff q is an integer (denominator 1 in canonical form).
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Strict grammar: optional sign, digits, optional "/digits". No decimals,
/// no whitespace. The denominator must be a positive integer.
inline Rational parse_rational(std::string_view text) {
  const auto fail = [&] {
    throw invalid_parameter("rational: cannot parse '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::size_t num_begin = pos;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
  if (pos == num_begin) fail();
  Integer num(std::string(text.substr(num_begin, pos - num_begin)), 10);
  if (negative) num = -num;
  Integer den(1);
  if (pos < text.size()) {
    if (text[pos] != '/') fail();
    ++pos;
    std::size_t den_begin = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == den_begin || pos != text.size()) fail();
    den = Integer(std::string(text.substr(den_begin)), 10);
    if (den == 0) fail();
  }
  return frac(num, den);
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

} // namespace densicohom
