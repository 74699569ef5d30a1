#include "qflux/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace qflux {

namespace {

void append_var(std::ostream& os, const char* name, int e) {
  if (e == 0) return;
  os << '*' << name;
  if (e != 1) os << '^' << e;
}

std::string term_body(const Exp& e, const BigInt& abscoef) {
  std::ostringstream os;
  os << abscoef.get_str();
  append_var(os, "p", e.p);
  append_var(os, "q", e.q);
  std::string s = os.str();
  // Drop a unit coefficient unless the term is bare.
  if (s.rfind("1*", 0) == 0) s = s.substr(2);
  return s;
}

} // namespace

std::string Monomial::str() const {
  LaurentPoly f = LaurentPoly::term(BigInt(sign), e.p, e.q);
  return f.str();
}

void LaurentPoly::add_term(const Exp& e, const BigInt& c) {
  if (sgn(c) == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r -= o;
  return r;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  if (terms_.empty() || o.terms_.empty()) return r;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

LaurentPoly LaurentPoly::times_monomial(const Monomial& m) const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e + m.e, m.sign > 0 ? c : -c);
  return r;
}

LaurentPoly LaurentPoly::invert_p() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(Exp{-e.p, e.q}, c);
  return r;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& d) const {
  if (d.is_zero()) fail(Err::InconsistentWeights, "division by zero polynomial");
  if (is_zero()) return LaurentPoly();
  // Shift the divisor so its minimal exponents are zero; then a quotient in
  // the Laurent ring exists iff long division (lex order on (p,q), highest
  // first) terminates with zero remainder.
  Exp dshift{d.min_pexp(), d.min_qexp()};
  LaurentPoly den = d.times_monomial({1, -dshift.p, -dshift.q});
  LaurentPoly rem = *this;
  LaurentPoly quot;
  const auto& dlead = *den.terms().rbegin();
  // Lex-descending division need not terminate on inexact Laurent input, so
  // cap the number of quotient terms.
  std::size_t cap = 16 * (term_count() + 1) * (den.term_count() + 1) + 64;
  while (!rem.is_zero()) {
    if (quot.term_count() > cap) fail(Err::InconsistentWeights, "inexact polynomial division");
    const auto& rlead = *rem.terms().rbegin();
    Exp de = rlead.first - dlead.first;
    BigInt qc = rlead.second / dlead.second;
    if (sgn(qc) == 0 || qc * dlead.second != rlead.second)
      fail(Err::InconsistentWeights, "inexact polynomial division");
    LaurentPoly t = LaurentPoly::term(qc, de.p, de.q);
    quot += t;
    rem -= den * t;
    // Progress check: leading term strictly decreases in lex order.
    if (!rem.is_zero() && !(rem.terms().rbegin()->first < rlead.first))
      fail(Err::InconsistentWeights, "inexact polynomial division");
  }
  return quot.times_monomial({1, -dshift.p, -dshift.q});
}

std::optional<Monomial> LaurentPoly::as_unit_monomial() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [e, c] = *terms_.begin();
  if (c != 1 && c != -1) return std::nullopt;
  return Monomial{sgn(c), e.p, e.q};
}

std::optional<Monomial> LaurentPoly::unit_ratio_to(const LaurentPoly& g) const {
  if (is_zero() || g.is_zero()) return std::nullopt;
  if (terms_.size() != g.terms_.size()) return std::nullopt;
  const auto& [ef, cf] = *terms_.rbegin();
  const auto& [eg, cg] = *g.terms_.rbegin();
  if (cf != cg && cf != -cg) return std::nullopt;
  Monomial m{cf == cg ? 1 : -1, ef.p - eg.p, ef.q - eg.q};
  if (*this == g.times_monomial(m)) return m;
  return std::nullopt;
}

int LaurentPoly::min_pexp() const {
  int m = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) m = std::min(m, e.p);
  return terms_.empty() ? 0 : m;
}

int LaurentPoly::max_pexp() const {
  int m = std::numeric_limits<int>::min();
  for (const auto& [e, c] : terms_) m = std::max(m, e.p);
  return terms_.empty() ? 0 : m;
}

int LaurentPoly::min_qexp() const {
  int m = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) m = std::min(m, e.q);
  return terms_.empty() ? 0 : m;
}

int LaurentPoly::max_qexp() const {
  int m = std::numeric_limits<int>::min();
  for (const auto& [e, c] : terms_) m = std::max(m, e.q);
  return terms_.empty() ? 0 : m;
}

BigRat LaurentPoly::eval(const BigRat& p0, const BigRat& q0) const {
  BigRat acc(0);
  for (const auto& [e, c] : terms_) acc += BigRat(c) * rat_pow(p0, e.p) * rat_pow(q0, e.q);
  return acc;
}

LaurentPoly LaurentPoly::coeff_of_p(int k) const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_)
    if (e.p == k) r.terms_.emplace(Exp{0, e.q}, c);
  return r;
}

int LaurentPoly::uniform_sign() const {
  int s = 0;
  for (const auto& [e, c] : terms_) {
    int cs = sgn(c);
    if (s == 0) s = cs;
    else if (s != cs) return 0;
  }
  return s;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // (pexp, qexp) lex descending.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool neg = sgn(c) < 0;
    if (first) {
      if (neg) os << '-';
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    os << term_body(e, neg ? BigInt(-c) : c);
  }
  return os.str();
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }

  long integer() {
    skip_ws();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail(Err::BadInput, "expected integer at position " + std::to_string(start));
    return std::stol(s.substr(start, i - start));
  }

  BigInt bigint() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail(Err::BadInput, "expected number at position " + std::to_string(start));
    return BigInt(s.substr(start, i - start));
  }

  // coefficient? ('*'? var ('^' int)?)*
  void term(LaurentPoly& out, int sign) {
    BigInt coef(1);
    Exp e{0, 0};
    bool saw_any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef = bigint();
      saw_any = true;
    }
    while (true) {
      skip_ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip_ws();
      }
      if (i < s.size() && (s[i] == 'p' || s[i] == 'q')) {
        char v = s[i++];
        long ex = 1;
        skip_ws();
        if (i < s.size() && s[i] == '^') {
          ++i;
          ex = integer();
        }
        if (v == 'p') e.p += static_cast<int>(ex);
        else e.q += static_cast<int>(ex);
        saw_any = true;
      } else {
        break;
      }
    }
    if (!saw_any) fail(Err::BadInput, "empty term at position " + std::to_string(i));
    out.add_term(e, sign > 0 ? coef : -coef);
  }
};

} // namespace

LaurentPoly LaurentPoly::parse(const std::string& text) {
  Parser p(text);
  LaurentPoly out;
  if (p.done()) fail(Err::BadInput, "empty polynomial text");
  if (p.peek() == '0') {
    std::size_t save = p.i;
    ++p.i;
    if (p.done()) return out;
    p.i = save;
  }
  int sign = 1;
  if (p.peek() == '-') {
    sign = -1;
    ++p.i;
  } else if (p.peek() == '+') {
    ++p.i;
  }
  p.term(out, sign);
  while (!p.done()) {
    char op = p.peek();
    if (op != '+' && op != '-')
      fail(Err::BadInput, "expected + or - at position " + std::to_string(p.i));
    ++p.i;
    p.term(out, op == '+' ? 1 : -1);
  }
  return out;
}

} // namespace qflux
