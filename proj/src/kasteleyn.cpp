#include "qflux/kasteleyn.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

namespace qflux {

namespace {

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(static_cast<std::size_t>(n)) {
    std::iota(up.begin(), up.end(), 0);
  }
  int find(int x) {
    while (up[static_cast<std::size_t>(x)] != x) {
      up[static_cast<std::size_t>(x)] = up[static_cast<std::size_t>(up[static_cast<std::size_t>(x)])];
      x = up[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

} // namespace

WeightedComplex propagate_weights(const Complex& cx, TreePolicy policy) {
  WeightedComplex w;
  w.cx = &cx;
  w.weight.assign(cx.edges.size(), Monomial::one());
  w.in_tree.assign(cx.edges.size(), 0);
  std::vector<char> known(cx.edges.size(), 0);
  std::vector<char> crossing(cx.edges.size(), 0);
  for (const auto& cr : cx.crossings) crossing[static_cast<std::size_t>(cr.edge)] = 1;

  // Spanning tree of the cut-open graph, Kruskal over the chosen edge order.
  std::vector<int> order;
  for (int pass = 0; pass < 2; ++pass) {
    bool want_horizontal = (policy == TreePolicy::HorizontalFirst) == (pass == 0);
    for (int e = 0; e < static_cast<int>(cx.edges.size()); ++e)
      if (!crossing[static_cast<std::size_t>(e)] &&
          cx.edges[static_cast<std::size_t>(e)].horizontal == want_horizontal)
        order.push_back(e);
  }
  UnionFind uf(cx.ncells);
  for (int e : order) {
    if (uf.unite(cx.edges[static_cast<std::size_t>(e)].u, cx.edges[static_cast<std::size_t>(e)].v)) {
      w.in_tree[static_cast<std::size_t>(e)] = 1;
      known[static_cast<std::size_t>(e)] = 1; // weight 1
    }
  }
  if (!cx.crossings.empty()) {
    w.p_edge = cx.crossings.front().edge;
    w.weight[static_cast<std::size_t>(w.p_edge)] = Monomial::p();
    known[static_cast<std::size_t>(w.p_edge)] = 1;
  }

  // Fixpoint: solve any block with exactly one unknown edge from
  //   product(target pair) = -q * product(source pair),
  // where a positive flip takes horizontal to vertical iff top-left is white.
  const Monomial minus_q{-1, 0, 1};
  auto block_sides = [&](const CBlock& b) {
    std::array<int, 2> hpair{b.e_top, b.e_bottom}, vpair{b.e_left, b.e_right};
    // tl_white: v-pair = -q * h-pair; else h-pair = -q * v-pair.
    return b.tl_white ? std::pair{vpair, hpair} : std::pair{hpair, vpair};
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (const CBlock& b : cx.blocks) {
      auto [target, source] = block_sides(b);
      std::array<int, 4> es{target[0], target[1], source[0], source[1]};
      int unknown = -1, unknowns = 0;
      for (int e : es)
        if (!known[static_cast<std::size_t>(e)]) {
          unknown = e;
          ++unknowns;
        }
      if (unknowns != 1) continue;
      Monomial lhs = w.weight[static_cast<std::size_t>(target[0])] *
                     w.weight[static_cast<std::size_t>(target[1])];
      Monomial rhs = minus_q * w.weight[static_cast<std::size_t>(source[0])] *
                     w.weight[static_cast<std::size_t>(source[1])];
      // Divide the relation by the three known weights.
      Monomial solved;
      if (unknown == target[0] || unknown == target[1]) {
        int other = unknown == target[0] ? target[1] : target[0];
        solved = rhs / w.weight[static_cast<std::size_t>(other)];
      } else {
        int other = unknown == source[0] ? source[1] : source[0];
        solved = lhs / (minus_q * w.weight[static_cast<std::size_t>(other)]);
      }
      w.weight[static_cast<std::size_t>(unknown)] = solved;
      known[static_cast<std::size_t>(unknown)] = 1;
      progress = true;
    }
  }
  for (std::size_t e = 0; e < known.size(); ++e)
    if (!known[e])
      fail(Err::UnderdeterminedWeights,
           "weight propagation stalled with unresolved edges");
  for (const CBlock& b : cx.blocks) {
    auto [target, source] = block_sides(b);
    Monomial lhs = w.weight[static_cast<std::size_t>(target[0])] *
                   w.weight[static_cast<std::size_t>(target[1])];
    Monomial rhs = minus_q * w.weight[static_cast<std::size_t>(source[0])] *
                   w.weight[static_cast<std::size_t>(source[1])];
    if (!(lhs == rhs))
      fail(Err::InconsistentWeights, "flip relation violated after propagation");
  }
  return w;
}

KasteleynMatrix kasteleyn_matrix(const WeightedComplex& w) {
  const Complex& cx = *w.cx;
  KasteleynMatrix m;
  for (int i = 0; i < cx.ncells; ++i)
    (cx.color[static_cast<std::size_t>(i)] == 1 ? m.rows : m.cols).push_back(i);
  std::vector<int> col_of(static_cast<std::size_t>(cx.ncells), -1);
  for (int j = 0; j < static_cast<int>(m.cols.size()); ++j)
    col_of[static_cast<std::size_t>(m.cols[static_cast<std::size_t>(j)])] = j;
  m.entries.assign(m.rows.size(), std::vector<LaurentPoly>(m.cols.size()));
  for (int e = 0; e < static_cast<int>(cx.edges.size()); ++e) {
    const CEdge& ed = cx.edges[static_cast<std::size_t>(e)];
    int black = cx.color[static_cast<std::size_t>(ed.u)] == 1 ? ed.u : ed.v;
    int white = black == ed.u ? ed.v : ed.u;
    int i = static_cast<int>(std::lower_bound(m.rows.begin(), m.rows.end(), black) - m.rows.begin());
    int j = col_of[static_cast<std::size_t>(white)];
    m.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
        LaurentPoly(w.weight[static_cast<std::size_t>(e)]);
  }
  return m;
}

Monomial tiling_monomial(const WeightedComplex& w, const Tiling& t) {
  const Complex& cx = *w.cx;
  Monomial prod = Monomial::one();
  for (int e : t.edges) prod = prod * w.weight[static_cast<std::size_t>(e)];
  // Permutation parity of the black -> white matching, both sides in cell
  // index order.
  std::vector<int> blacks, whites;
  for (int i = 0; i < cx.ncells; ++i)
    (cx.color[static_cast<std::size_t>(i)] == 1 ? blacks : whites).push_back(i);
  std::vector<int> white_pos(static_cast<std::size_t>(cx.ncells), -1);
  for (int j = 0; j < static_cast<int>(whites.size()); ++j)
    white_pos[static_cast<std::size_t>(whites[static_cast<std::size_t>(j)])] = j;
  std::vector<int> perm(blacks.size());
  for (int i = 0; i < static_cast<int>(blacks.size()); ++i)
    perm[static_cast<std::size_t>(i)] =
        white_pos[static_cast<std::size_t>(t.partner[static_cast<std::size_t>(blacks[static_cast<std::size_t>(i)])])];
  std::vector<char> seen(perm.size(), 0);
  int transpositions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    transpositions += len - 1;
  }
  if (transpositions % 2 != 0) prod.sign = -prod.sign;
  return prod;
}

LaurentPoly det_bareiss(std::vector<std::vector<LaurentPoly>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return LaurentPoly::one();
  int sign = 1;
  LaurentPoly prev = LaurentPoly::one();
  for (int k = 0; k < n - 1; ++k) {
    // Row pivot; an all-zero pivot column means a singular matrix.
    int pr = -1;
    for (int i = k; i < n && pr < 0; ++i)
      if (!m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].is_zero()) pr = i;
    if (pr < 0) return LaurentPoly::zero();
    if (pr != k) {
      std::swap(m[static_cast<std::size_t>(pr)], m[static_cast<std::size_t>(k)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        LaurentPoly num = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] *
                              m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                              m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = num.divide_exact(prev);
      }
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = LaurentPoly::zero();
    }
    prev = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
  }
  LaurentPoly det = m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
  return sign > 0 ? det : -det;
}

namespace {

using Mask = unsigned __int128;

struct MaskHash {
  std::size_t operator()(const Mask& m) const {
    auto lo = static_cast<std::uint64_t>(m);
    auto hi = static_cast<std::uint64_t>(m >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
  }
};

} // namespace

LaurentPoly det_memo_laplace(const std::vector<std::vector<LaurentPoly>>& m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return LaurentPoly::one();
  if (n > 120) fail(Err::BadInput, "memoized Laplace limited to 120 columns");
  // last_row[j]: below this row, column j has no support; a column still
  // unused past its last row forces a zero determinant.
  std::vector<int> last_row(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero())
        last_row[static_cast<std::size_t>(j)] = i;
  for (int j = 0; j < n; ++j)
    if (last_row[static_cast<std::size_t>(j)] < 0) return LaurentPoly::zero();

  // needed[row]: columns whose support ends at or before this row; they must
  // all be used once the row is done or the minor is zero.
  std::vector<Mask> needed(static_cast<std::size_t>(n), Mask(0));
  for (int j = 0; j < n; ++j)
    needed[static_cast<std::size_t>(last_row[static_cast<std::size_t>(j)])] |= Mask(1) << j;
  for (int i = 1; i < n; ++i) needed[static_cast<std::size_t>(i)] |= needed[static_cast<std::size_t>(i) - 1];

  std::vector<std::unordered_map<Mask, LaurentPoly, MaskHash>> memo(static_cast<std::size_t>(n) + 1);
  std::function<const LaurentPoly&(int, Mask)> solve = [&](int row, Mask used) -> const LaurentPoly& {
    auto& level = memo[static_cast<std::size_t>(row)];
    auto it = level.find(used);
    if (it != level.end()) return it->second;
    LaurentPoly acc;
    if (row == n) {
      acc = LaurentPoly::one();
    } else {
      int parity = 0; // available columns passed so far
      for (int j = 0; j < n; ++j) {
        Mask bit = Mask(1) << j;
        if (used & bit) continue;
        const LaurentPoly& entry = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
        if (!entry.is_zero() && (needed[static_cast<std::size_t>(row)] & ~(used | bit)) == 0) {
          LaurentPoly sub = solve(row + 1, used | bit);
          if (!sub.is_zero()) {
            LaurentPoly term = entry * sub;
            if (parity % 2 != 0) term = -term;
            acc += term;
          }
        }
        ++parity;
      }
    }
    return level.emplace(used, std::move(acc)).first->second;
  };
  return solve(0, Mask(0));
}

LaurentPoly phi(const WeightedComplex& w, DetEngine engine) {
  const Complex& cx = *w.cx;
  if (!cx.balanced()) fail(Err::UnbalancedRegion, "phi requires a balanced region");
  KasteleynMatrix m = kasteleyn_matrix(w);
  bool use_bareiss;
  switch (engine) {
    case DetEngine::Bareiss: use_bareiss = true; break;
    case DetEngine::MemoLaplace: use_bareiss = false; break;
    default: use_bareiss = m.rows.size() <= 26; break;
  }
  return use_bareiss ? det_bareiss(m.entries) : det_memo_laplace(m.entries);
}

LaurentPoly phi_by_enumeration(const WeightedComplex& w, const std::vector<Tiling>& tilings) {
  LaurentPoly sum;
  int sign = 0;
  for (const Tiling& t : tilings) {
    Monomial mono = tiling_monomial(w, t);
    if (sign == 0) sign = mono.sign;
    else if (sign != mono.sign)
      fail(Err::SignMixture, "tiling monomials with mixed signs");
    sum += LaurentPoly(mono);
  }
  return sum;
}

BigInt det_bareiss_int(std::vector<std::vector<BigInt>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return BigInt(1);
  int sign = 1;
  BigInt prev(1);
  for (int k = 0; k < n - 1; ++k) {
    int pr = -1;
    for (int i = k; i < n && pr < 0; ++i)
      if (sgn(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) != 0) pr = i;
    if (pr < 0) return BigInt(0);
    if (pr != k) {
      std::swap(m[static_cast<std::size_t>(pr)], m[static_cast<std::size_t>(k)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        BigInt num = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] *
                         m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                     m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                         m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = num / prev;
      }
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = 0;
    }
    prev = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
  }
  BigInt det = m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
  return sign > 0 ? det : -det;
}

BigInt disk_adjacency_det(const GridRegion& r) {
  Classification cls = classify(r);
  if (cls.kind != RegionKind::Disk) fail(Err::NotADisk, "adjacency determinant requires a disk");
  if (!r.balanced()) fail(Err::UnbalancedDisk, "disk is not balanced");
  Complex cx = build_complex(r);
  std::vector<int> blacks, whites;
  for (int i = 0; i < cx.ncells; ++i)
    (cx.color[static_cast<std::size_t>(i)] == 1 ? blacks : whites).push_back(i);
  int n = static_cast<int>(blacks.size());
  std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(n),
                                     std::vector<BigInt>(static_cast<std::size_t>(n), BigInt(0)));
  std::vector<int> col_of(static_cast<std::size_t>(cx.ncells), -1);
  for (int j = 0; j < n; ++j) col_of[static_cast<std::size_t>(whites[static_cast<std::size_t>(j)])] = j;
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < 4; ++d) {
      int o = cx.nbr[static_cast<std::size_t>(blacks[static_cast<std::size_t>(i)])][static_cast<std::size_t>(d)];
      if (o >= 0) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col_of[static_cast<std::size_t>(o)])] = 1;
    }
  return det_bareiss_int(std::move(m));
}

} // namespace qflux
