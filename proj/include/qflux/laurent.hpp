#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qflux/bigint.hpp"

namespace qflux {

// Exponent pair of a term c * p^p q^q. Laurent: exponents may be negative.
struct Exp {
  int p = 0;
  int q = 0;
  auto operator<=>(const Exp&) const = default;
  Exp operator+(const Exp& o) const { return {p + o.p, q + o.q}; }
  Exp operator-(const Exp& o) const { return {p - o.p, q - o.q}; }
};

// A signed unit: +-1 * p^pexp * q^qexp. Edge weights and per-tiling weights
// stay in this form throughout the Kasteleyn construction.
struct Monomial {
  int sign = 1; // +1 or -1
  Exp e;

  Monomial() = default;
  Monomial(int s, int pexp, int qexp) : sign(s), e{pexp, qexp} {}

  Monomial operator*(const Monomial& o) const { return {sign * o.sign, e.p + o.e.p, e.q + o.e.q}; }
  Monomial operator/(const Monomial& o) const { return {sign * o.sign, e.p - o.e.p, e.q - o.e.q}; }
  bool operator==(const Monomial& o) const = default;

  static Monomial one() { return {1, 0, 0}; }
  static Monomial p() { return {1, 1, 0}; }
  std::string str() const;
};

// Sparse element of Z[p^{+-1}, q^{+-1}]: map exponent -> nonzero coefficient.
// The map representation is itself the canonical form.
class LaurentPoly {
 public:
  using Terms = std::map<Exp, BigInt>;

  LaurentPoly() = default;
  explicit LaurentPoly(const BigInt& c) {
    if (sgn(c) != 0) terms_[{0, 0}] = c;
  }
  explicit LaurentPoly(const Monomial& m) { terms_[m.e] = BigInt(m.sign); }

  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return LaurentPoly(BigInt(1)); }
  static LaurentPoly term(const BigInt& c, int pexp, int qexp) {
    LaurentPoly f;
    if (sgn(c) != 0) f.terms_[{pexp, qexp}] = c;
    return f;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Exp& e, const BigInt& c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

  LaurentPoly times_monomial(const Monomial& m) const;

  // Exact division in the Laurent ring; fails with InconsistentWeights if the
  // quotient does not exist (the Bareiss recurrence guarantees it does).
  LaurentPoly divide_exact(const LaurentPoly& d) const;

  // Substitute p -> p^{-1}.
  LaurentPoly invert_p() const;

  // If f = +-m for a single monomial m, return it.
  std::optional<Monomial> as_unit_monomial() const;

  // f / g as a single monomial, when f == +-p^a q^b * g. Used for the gauge
  // and trace-identity checks.
  std::optional<Monomial> unit_ratio_to(const LaurentPoly& g) const;

  int min_pexp() const;
  int max_pexp() const;
  int min_qexp() const;
  int max_qexp() const;

  // Exact evaluation at rational (p0, q0).
  BigRat eval(const BigRat& p0, const BigRat& q0) const;

  // Coefficient of p^k as a polynomial in q.
  LaurentPoly coeff_of_p(int k) const;

  // All coefficients the same sign? Returns +1/-1, or 0 for mixed/zero.
  int uniform_sign() const;

  // Canonical text form: terms sorted by (pexp, qexp) lexicographically
  // descending, e.g. "p^4*q^36 - 3*p^2*q^-1 + 1".
  std::string str() const;
  static LaurentPoly parse(const std::string& text);

 private:
  Terms terms_;
};

} // namespace qflux
