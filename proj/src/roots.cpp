#include "qflux/roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>

#include "qflux/error.hpp"

namespace qflux {

Specialization specialize_q(const LaurentPoly& f, const BigRat& q0) {
  std::map<int, BigRat> byp;
  for (const auto& [e, c] : f.terms()) byp[e.p] += BigRat(c) * rat_pow(q0, e.q);
  for (auto it = byp.begin(); it != byp.end();)
    it = sgn(it->second) == 0 ? byp.erase(it) : std::next(it);
  Specialization out;
  if (byp.empty()) return out;
  int minexp = byp.begin()->first;
  int maxexp = byp.rbegin()->first;
  std::vector<BigRat> coeffs(static_cast<std::size_t>(maxexp - minexp) + 1, BigRat(0));
  for (const auto& [a, v] : byp) coeffs[static_cast<std::size_t>(a - minexp)] = v;
  out.shift = -minexp;
  out.poly = UniPoly(std::move(coeffs));
  return out;
}

namespace {

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

// Primitive integer image scaled by a positive rational, so the sign
// pattern is that of the input polynomial.
IntCoeffs positive_primitive(const UniPoly& f) {
  auto img = f.primitive_integer();
  return img.coeffs;
}

UniPoly from_int(const IntCoeffs& z) {
  std::vector<BigRat> c;
  c.reserve(z.size());
  for (const auto& v : z) c.emplace_back(v);
  return UniPoly(std::move(c));
}

} // namespace

Certification sturm_negative_real_roots(const UniPoly& g) {
  if (g.is_zero()) fail(Err::ZeroPolynomial, "sturm_negative_real_roots on zero polynomial");
  if (sgn(g.coeff(0)) == 0) fail(Err::BadInput, "sturm_negative_real_roots requires g(0) != 0");

  Certification cert;
  cert.name = "sturm_negative_real_roots";
  int deg = g.degree();
  cert.witness["degree"] = deg;
  if (deg == 0) {
    cert.verdict = Verdict::PASS;
    cert.witness["negative_real_roots"] = 0;
    cert.witness["squarefree"] = true;
    return cert;
  }

  UniPoly common = UniPoly::gcd(g, g.derivative());
  if (common.degree() >= 1) {
    cert.verdict = Verdict::FAIL;
    cert.witness["squarefree"] = false;
    cert.witness["repeated_factor"] = common.str();
    return cert;
  }
  cert.witness["squarefree"] = true;

  // Sturm chain over primitive integer polynomials; each remainder is
  // rescaled by a positive rational which leaves all signs intact.
  std::vector<IntCoeffs> chain;
  chain.push_back(positive_primitive(g));
  chain.push_back(positive_primitive(g.derivative()));
  while (chain.back().size() > 1) {
    UniPoly a = from_int(chain[chain.size() - 2]);
    UniPoly b = from_int(chain.back());
    UniPoly r = a.divrem(b).rem;
    if (r.is_zero()) break; // cannot happen for square-free input
    chain.push_back(positive_primitive(-r));
  }

  std::vector<int> at_minus_inf, at_zero;
  for (const auto& f : chain) {
    int d = static_cast<int>(f.size()) - 1;
    int lead = sgn(f.back());
    at_minus_inf.push_back(d % 2 == 0 ? lead : -lead);
    at_zero.push_back(sgn(f.front()));
  }
  int negative_roots = sign_changes(at_minus_inf) - sign_changes(at_zero);
  cert.witness["negative_real_roots"] = negative_roots;
  cert.witness["sturm_chain_length"] = chain.size();
  cert.verdict = negative_roots == deg ? Verdict::PASS : Verdict::FAIL;
  if (cert.verdict == Verdict::FAIL)
    cert.witness["counterexample"] =
        "only " + std::to_string(negative_roots) + " of " + std::to_string(deg) +
        " roots are negative real";
  return cert;
}

Certification roots_of_unity_certificate(const UniPoly& g) {
  if (g.is_zero()) fail(Err::ZeroPolynomial, "roots_of_unity_certificate on zero polynomial");
  if (sgn(g.coeff(0)) == 0) fail(Err::BadInput, "roots_of_unity_certificate requires g(0) != 0");

  Certification cert;
  cert.name = "roots_of_unity_certificate";
  auto img = g.primitive_integer();
  IntCoeffs h = img.coeffs;
  int deg0 = static_cast<int>(h.size()) - 1;
  cert.witness["degree"] = deg0;

  BigInt lead = h.back();
  if (lead != 1 && lead != -1) {
    cert.verdict = Verdict::FAIL;
    cert.witness["counterexample"] = "leading coefficient " + lead.get_str() + " is not a unit";
    return cert;
  }

  // phi(d) >= sqrt(d/2), so every d with phi(d) <= deg0 lies below 2*deg0^2+2.
  Json factors = Json::object();
  int dcap = 2 * deg0 * deg0 + 2;
  for (int d = 1; d <= dcap && h.size() > 1; ++d) {
    if (euler_phi(d) > static_cast<int>(h.size()) - 1) continue;
    const IntCoeffs& phi_d = cyclotomic(d);
    int mult = 0;
    IntCoeffs quot;
    while (int_poly_divide(h, phi_d, &quot)) {
      h = quot;
      ++mult;
    }
    if (mult > 0) factors[std::to_string(d)] = mult;
  }
  cert.witness["cyclotomic_factors"] = factors;
  cert.witness["content"] = img.content.get_str();
  bool fully_factored = h.size() == 1 && (h[0] == 1 || h[0] == -1);
  cert.verdict = fully_factored ? Verdict::PASS : Verdict::FAIL;
  if (!fully_factored) cert.witness["leftover"] = from_int(h).str();
  return cert;
}

std::vector<std::complex<double>> numeric_roots(const UniPoly& g) {
  if (g.degree() < 1) fail(Err::BadInput, "numeric_roots requires degree >= 1");
  int n = g.degree();
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  double norm = 0;
  for (int i = 0; i <= n; ++i) {
    c[static_cast<std::size_t>(i)] = to_double(g.coeff(i));
    norm = std::max(norm, std::abs(c[static_cast<std::size_t>(i)]));
  }
  if (norm == 0) fail(Err::ZeroPolynomial, "numeric_roots on zero polynomial");

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)];
    if (i > 0) comp(i, i - 1) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) fail(Err::ConvergenceFailure, "eigen solver failed");

  std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];

  auto eval = [&](std::complex<double> x) {
    std::complex<double> acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * x + c[static_cast<std::size_t>(i)];
    return acc;
  };
  auto eval_d = [&](std::complex<double> x) {
    std::complex<double> acc = 0;
    for (int i = n; i >= 1; --i)
      acc = acc * x + c[static_cast<std::size_t>(i)] * static_cast<double>(i);
    return acc;
  };

  const double tol = 1e-9;
  for (auto& r : roots) {
    for (int it = 0; it < 64; ++it) {
      std::complex<double> fr = eval(r);
      double bound = tol * norm * std::pow(std::max(1.0, std::abs(r)), n);
      if (std::abs(fr) <= bound) break;
      std::complex<double> dr = eval_d(r);
      if (std::abs(dr) == 0) break;
      r -= fr / dr;
    }
    double bound = tol * norm * std::pow(std::max(1.0, std::abs(r)), n);
    if (std::abs(eval(r)) > bound)
      fail(Err::ConvergenceFailure, "root polish did not reach backward-error bound");
  }

  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

} // namespace qflux
