#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace dyadic {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// q^k as an exact rational; negative k gives q^{-|k|}.
inline Rational rational_pow(const Rational& base, int k) {
  Rational result = 1;
  Rational b = base;
  unsigned n = static_cast<unsigned>(k < 0 ? -k : k);
  while (n) {
    if (n & 1u) result *= b;
    b *= b;
    n >>= 1u;
  }
  if (k < 0) result = 1 / result;
  return result;
}

/// "p/q" or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

inline Integer integer_from_u128(unsigned __int128 v) {
  Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
  Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return (hi << 64) + lo;
}

}  // namespace dyadic
