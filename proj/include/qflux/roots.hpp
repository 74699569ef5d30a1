#pragma once

#include <complex>
#include <vector>

#include "qflux/cert.hpp"
#include "qflux/laurent.hpp"
#include "qflux/unipoly.hpp"

namespace qflux {

// f(p, q0) = p^{-shift} * poly(p) with poly(0) != 0, or poly == 0.
struct Specialization {
  int shift = 0;
  UniPoly poly;
};

Specialization specialize_q(const LaurentPoly& f, const BigRat& q0);

// PASS iff every complex root of g is real, strictly negative and simple.
// Exact: square-free test plus a Sturm count of roots in (-inf, 0).
Certification sturm_negative_real_roots(const UniPoly& g);

// PASS iff the primitive part of g is +-1 times a product of cyclotomic
// polynomials (so all roots are roots of unity), found by trial exact
// division by Phi_d over all candidate d.
Certification roots_of_unity_certificate(const UniPoly& g);

// All complex roots to roughly 1e-9 backward error (companion matrix plus
// Newton polishing). Advisory only; exact claims go through the
// certifications above.
std::vector<std::complex<double>> numeric_roots(const UniPoly& g);

} // namespace qflux
