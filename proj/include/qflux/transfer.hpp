#pragma once

#include <optional>
#include <vector>

#include "qflux/kasteleyn.hpp"

namespace qflux {

// A set of cut sides used by trespassing half-dominoes at an attachment.
// Bit j of mask selects crossing j (cut path order). The flux is the sum of
// the p-exponents of the selected crossing weights.
struct Shape {
  unsigned mask = 0;
  int flux = 0;
};

struct FluxBlock {
  int flux = 0;
  std::vector<int> shape_ids;                    // global shape indices
  std::vector<std::vector<LaurentPoly>> entries; // q-only, nonnegative coefficients
  std::vector<int> bi_active;                    // local indices, set by mark_bi_active
};

struct ConnectionMatrix {
  std::vector<Shape> shapes; // ordered by (flux, mask)
  std::vector<FluxBlock> blocks;
  int block_sign = 1; // global sign absorbed by the similarity normalisation
};

// All side subsets with no doubled cell claim, ordered by (flux, mask).
std::vector<Shape> enumerate_shapes(const WeightedComplex& w);

// Cells of the track segment claimed by the pair of shapes; nullopt when a
// square is claimed twice (pruning not defined).
std::optional<std::vector<char>> prune(const Complex& cx, const Shape& left, const Shape& right);

// Entry (l, r) q-counts tilings of the pruned segment, weighted by the
// left shape's crossing monomial so that juxtaposition is exactly matrix
// multiplication. Entries are made nonnegative by a diagonal +-1 similarity
// plus one global sign.
ConnectionMatrix connection_matrix(const WeightedComplex& w);

// p^* q^* sum_f tr((C_f)^n) p^f: the trace reconstruction of Phi_{A^n}.
LaurentPoly power_and_trace(const ConnectionMatrix& cm, int n);

// Matrix power of one block.
std::vector<std::vector<LaurentPoly>> block_power(const FluxBlock& b, int n);

// Marks shapes that both reach and are reached from a cycle of the nonzero
// pattern digraph (equivalently: shapes realised by a tiling of the
// bi-infinite band). q0 only validates that the pattern is q-independent.
void mark_bi_active(ConnectionMatrix& cm, const BigRat& q0);

// Bi-active submatrix of one block.
std::vector<std::vector<LaurentPoly>> bi_active_submatrix(const FluxBlock& b);

struct PrimitivityResult {
  bool primitive = false;
  int witness_power = -1;
  int dimension = 0;
};

// Wielandt-style check: some power n <= dim^2 + 1 of the nonzero pattern is
// entrywise positive.
PrimitivityResult primitivity_check(const std::vector<std::vector<LaurentPoly>>& block);

} // namespace qflux
