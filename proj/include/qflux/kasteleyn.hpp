#pragma once

#include <vector>

#include "qflux/laurent.hpp"
#include "qflux/region.hpp"
#include "qflux/tiling.hpp"

namespace qflux {

// Spanning tree edge ordering. HorizontalFirst is the construction default;
// VerticalFirst exists so tests can exercise gauge invariance.
enum class TreePolicy { HorizontalFirst, VerticalFirst };

struct WeightedComplex {
  const Complex* cx = nullptr;
  std::vector<Monomial> weight; // per edge
  std::vector<char> in_tree;
  int p_edge = -1; // the crossing edge carrying weight p; -1 for disks
};

// Tree edges get weight 1 and the first cut crossing gets weight p; every
// other edge is forced by the flip relation w2*w3 = -q*w0*w1, applied per
// 2x2 block with the orientation given by the block's top-left color.
// All relations are re-verified after the fixpoint.
WeightedComplex propagate_weights(const Complex& cx,
                                  TreePolicy policy = TreePolicy::HorizontalFirst);

struct KasteleynMatrix {
  std::vector<int> rows; // black cell ids, index order
  std::vector<int> cols; // white cell ids, index order
  std::vector<std::vector<LaurentPoly>> entries;
};

KasteleynMatrix kasteleyn_matrix(const WeightedComplex& w);

// The det-expansion contribution of one tiling: permutation sign times the
// product of its edge weights. Flux and volume are its p- and q-exponents.
Monomial tiling_monomial(const WeightedComplex& w, const Tiling& t);

enum class DetEngine { Auto, Bareiss, MemoLaplace };

// Phi_A(p, q) = +-det(M_A), exact over Z[p^{+-1}, q^{+-1}].
LaurentPoly phi(const WeightedComplex& w, DetEngine engine = DetEngine::Auto);

// Oracle side of the identity: the sum of per-tiling signed monomials, which
// must be sign-uniform (SignMixture otherwise).
LaurentPoly phi_by_enumeration(const WeightedComplex& w, const std::vector<Tiling>& tilings);

// Theorem-DT oracle: determinant of the unweighted black/white adjacency
// matrix of a balanced disk.
BigInt disk_adjacency_det(const GridRegion& r);

// Exact determinant engines, exposed for the dual-path tests.
LaurentPoly det_bareiss(std::vector<std::vector<LaurentPoly>> m);
LaurentPoly det_memo_laplace(const std::vector<std::vector<LaurentPoly>>& m);
BigInt det_bareiss_int(std::vector<std::vector<BigInt>> m);

} // namespace qflux
