#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "addrep/errors.hpp"

namespace addrep {

/// Arbitrary-precision integer. All counts in this library are exact.
using Integer = mpz_class;

/// Exact rational number, always kept canonical (gcd 1, positive denominator).
using Rational = mpq_class;

/// Parses "p" or "p/q" (base 10, optional leading '-'). The result is canonicalized.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  mpq_t q;
  mpq_init(q);
  if (mpq_set_str(q, s.c_str(), 10) != 0) {
    mpq_clear(q);
    throw ParseError("malformed rational literal: '" + s + "'");
  }
  if (mpz_sgn(mpq_denref(q)) == 0) {
    mpq_clear(q);
    throw ParseError("zero denominator in rational literal: '" + s + "'");
  }
  mpq_canonicalize(q);
  Rational r(q);
  mpq_clear(q);
  return r;
}

/// Renders a canonical rational as "p" (integers) or "p/q".
inline std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Integer binomial(std::uint64_t n, std::uint64_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// floor(log2(x)) for x >= 1.
inline std::uint32_t floor_log2(std::uint64_t x) {
  if (x == 0) throw PreconditionError("floor_log2(0) is undefined");
  return static_cast<std::uint32_t>(std::bit_width(x) - 1);
}

/// Base-b digits of n, most significant first. The canonical representation
/// of 0 is the empty string.
inline std::vector<std::uint32_t> canonical_digits(std::uint64_t n, std::uint32_t base) {
  if (base < 2) throw PreconditionError("digit base must be >= 2");
  std::vector<std::uint32_t> d;
  while (n > 0) {
    d.push_back(static_cast<std::uint32_t>(n % base));
    n /= base;
  }
  std::reverse(d.begin(), d.end());
  return d;
}

}  // namespace addrep
