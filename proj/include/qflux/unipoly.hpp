#pragma once

#include <string>
#include <vector>

#include "qflux/bigint.hpp"

namespace qflux {

// Dense univariate polynomial over the rationals, coefficient of x^i at
// index i. The zero polynomial has an empty coefficient vector.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UniPoly constant(const BigRat& v) { return UniPoly(std::vector<BigRat>{v}); }
  static UniPoly from_int_coeffs(const std::vector<long>& ints);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
  const std::vector<BigRat>& coeffs() const { return c_; }
  const BigRat& coeff(int i) const;
  const BigRat& leading() const { return c_.back(); }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  UniPoly scaled(const BigRat& s) const;
  UniPoly derivative() const;
  BigRat eval(const BigRat& x) const;
  double eval_double(double x) const;

  // Euclidean division: *this = q * d + r with deg r < deg d.
  struct DivRem {
    UniPoly quot, rem;
  };
  DivRem divrem(const UniPoly& d) const;

  // Monic gcd via the Euclidean algorithm.
  static UniPoly gcd(UniPoly a, UniPoly b);

  // Primitive integer image: f = (sign * num/den) * primitive, content > 0.
  struct IntImage {
    std::vector<BigInt> coeffs; // primitive, leading nonzero
    BigRat content;             // rational content including sign
  };
  IntImage primitive_integer() const;

  std::string str(const std::string& var = "p") const;

 private:
  void trim();
  std::vector<BigRat> c_;
};

// Primitive integer polynomials, used by the cyclotomic factorisation.
using IntCoeffs = std::vector<BigInt>;

// Exact division in Z[x]; returns false if not divisible.
bool int_poly_divide(const IntCoeffs& num, const IntCoeffs& den, IntCoeffs* quot);
IntCoeffs int_poly_mul(const IntCoeffs& a, const IntCoeffs& b);

// The d-th cyclotomic polynomial, from x^n - 1 = prod_{d|n} Phi_d(x).
const IntCoeffs& cyclotomic(int d);

// Euler totient by trial-division factorisation.
int euler_phi(int d);

} // namespace qflux
