#include "qflux/unipoly.hpp"

#include <map>
#include <sstream>

#include "qflux/error.hpp"

namespace qflux {

void UniPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

UniPoly UniPoly::from_int_coeffs(const std::vector<long>& ints) {
  std::vector<BigRat> c;
  c.reserve(ints.size());
  for (long v : ints) c.emplace_back(v);
  return UniPoly(std::move(c));
}

const BigRat& UniPoly::coeff(int i) const {
  static const BigRat zero(0);
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<std::size_t>(i)];
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<BigRat> r(std::max(c_.size(), o.c_.size()), BigRat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator-() const {
  std::vector<BigRat> r = c_;
  for (auto& v : r) v = -v;
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly();
  std::vector<BigRat> r(c_.size() + o.c_.size() - 1, BigRat(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(const BigRat& s) const {
  std::vector<BigRat> r = c_;
  for (auto& v : r) v *= s;
  return UniPoly(std::move(r));
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<BigRat> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * BigRat(static_cast<long>(i));
  return UniPoly(std::move(r));
}

BigRat UniPoly::eval(const BigRat& x) const {
  BigRat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UniPoly::eval_double(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

UniPoly::DivRem UniPoly::divrem(const UniPoly& d) const {
  if (d.is_zero()) fail(Err::ZeroPolynomial, "division by zero polynomial");
  UniPoly rem = *this;
  std::vector<BigRat> q(rem.degree() >= d.degree() ? rem.degree() - d.degree() + 1 : 0, BigRat(0));
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int k = rem.degree() - d.degree();
    BigRat f = rem.leading() / d.leading();
    q[static_cast<std::size_t>(k)] = f;
    std::vector<BigRat> sub(static_cast<std::size_t>(k), BigRat(0));
    sub.push_back(f);
    rem = rem - d * UniPoly(std::move(sub));
  }
  return {UniPoly(std::move(q)), rem};
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.divrem(b).rem;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(BigRat(1) / a.leading());
}

UniPoly::IntImage UniPoly::primitive_integer() const {
  IntImage img;
  if (is_zero()) {
    img.content = BigRat(0);
    return img;
  }
  BigInt den(1);
  for (const auto& v : c_) {
    BigInt d = v.get_den();
    den = den / big_gcd(den, d) * d;
  }
  std::vector<BigInt> ints;
  ints.reserve(c_.size());
  BigInt content(0);
  for (const auto& v : c_) {
    BigRat scaled = v * BigRat(den);
    BigInt z = scaled.get_num(); // denominator is 1 by construction
    ints.push_back(z);
    content = big_gcd(content, z);
  }
  if (sgn(content) == 0) content = 1;
  for (auto& z : ints) z /= content;
  img.coeffs = std::move(ints);
  img.content = BigRat(content, den);
  img.content.canonicalize();
  return img;
}

std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigRat& v = coeff(i);
    if (sgn(v) == 0) continue;
    BigRat a = v;
    if (first) {
      if (sgn(v) < 0) os << '-', a = -a;
      first = false;
    } else {
      os << (sgn(v) < 0 ? " - " : " + ");
      if (sgn(v) < 0) a = -a;
    }
    bool unit = (a == 1);
    if (!unit || i == 0) os << a;
    if (i > 0) {
      if (!unit) os << '*';
      os << var;
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

IntCoeffs int_poly_mul(const IntCoeffs& a, const IntCoeffs& b) {
  if (a.empty() || b.empty()) return {};
  IntCoeffs r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

bool int_poly_divide(const IntCoeffs& num, const IntCoeffs& den, IntCoeffs* quot) {
  if (den.empty()) fail(Err::ZeroPolynomial, "integer polynomial division by zero");
  if (num.empty()) {
    if (quot) quot->clear();
    return true;
  }
  if (num.size() < den.size()) return false;
  IntCoeffs rem = num;
  IntCoeffs q(num.size() - den.size() + 1, BigInt(0));
  const BigInt& lead = den.back();
  for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
    BigInt top = rem[static_cast<std::size_t>(k) + den.size() - 1];
    if (sgn(top) == 0) continue;
    BigInt f = top / lead;
    if (f * lead != top) return false;
    q[static_cast<std::size_t>(k)] = f;
    for (std::size_t j = 0; j < den.size(); ++j)
      rem[static_cast<std::size_t>(k) + j] -= f * den[j];
  }
  for (const auto& v : rem)
    if (sgn(v) != 0) return false;
  if (quot) *quot = std::move(q);
  return true;
}

int euler_phi(int d) {
  int result = d;
  int n = d;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      result -= result / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const IntCoeffs& cyclotomic(int d) {
  static std::map<int, IntCoeffs> cache;
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  // x^d - 1 divided by all lower cyclotomic factors.
  IntCoeffs xn1(static_cast<std::size_t>(d) + 1, BigInt(0));
  xn1[0] = -1;
  xn1[static_cast<std::size_t>(d)] = 1;
  IntCoeffs acc = xn1;
  for (int e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    IntCoeffs q;
    if (!int_poly_divide(acc, cyclotomic(e), &q))
      fail(Err::InconsistentWeights, "cyclotomic recursion failed");
    acc = std::move(q);
  }
  return cache.emplace(d, std::move(acc)).first->second;
}

} // namespace qflux
