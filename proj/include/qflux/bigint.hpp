#pragma once

#include <gmpxx.h>

#include <string>

#include "qflux/error.hpp"

namespace qflux {

// Exact coefficient domain. mpq_class keeps denominators positive and
// fractions in lowest terms, which is exactly the invariant we need.
using BigInt = mpz_class;
using BigRat = mpq_class;

inline int sgn(const BigInt& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sgn(const BigRat& x) { return mpq_sgn(x.get_mpq_t()); }

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt big_pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// q0^e for possibly negative e; q0 must be nonzero when e < 0.
inline BigRat rat_pow(const BigRat& base, long e) {
  if (e == 0) return BigRat(1);
  if (sgn(base) == 0 && e < 0) fail(Err::BadInput, "negative power of zero");
  BigRat b = base;
  long n = e;
  if (n < 0) {
    b = BigRat(1) / b;
    n = -n;
  }
  BigRat r(1);
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

inline double to_double(const BigRat& x) { return x.get_d(); }
inline double to_double(const BigInt& x) { return x.get_d(); }

// Parses "3", "-5/7", "0.25" style values used on the CLI for q0.
inline BigRat parse_rational(const std::string& s) {
  if (s.empty()) fail(Err::BadInput, "empty rational");
  auto dot = s.find('.');
  try {
    if (dot == std::string::npos) {
      BigRat r(s);
      r.canonicalize();
      return r;
    }
    std::string intpart = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !intpart.empty() && intpart[0] == '-';
    if (neg) intpart = intpart.substr(1);
    if (intpart.empty()) intpart = "0";
    BigInt num(intpart + frac);
    BigInt den = big_pow(BigInt(10), frac.size());
    BigRat r(num, den);
    r.canonicalize();
    if (neg) r = -r;
    return r;
  } catch (const std::invalid_argument&) {
    fail(Err::BadInput, "cannot parse rational '" + s + "'");
  }
}

} // namespace qflux
