#include "qflux/transfer.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qflux {

std::vector<Shape> enumerate_shapes(const WeightedComplex& w) {
  const Complex& cx = *w.cx;
  int k = static_cast<int>(cx.crossings.size());
  if (k == 0) fail(Err::BadInput, "shapes require a cut annulus");
  if (k > 20) fail(Err::BadInput, "too many cut crossings for shape enumeration");
  std::vector<Shape> shapes;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    // Reject masks claiming one cell twice on either attachment.
    std::set<int> left_claims, right_claims;
    bool ok = true;
    int flux = 0;
    for (int j = 0; j < k && ok; ++j) {
      if (!(mask & (1u << j))) continue;
      const CrossingRef& cr = cx.crossings[static_cast<std::size_t>(j)];
      ok = left_claims.insert(cr.right_cell).second && right_claims.insert(cr.left_cell).second;
      flux += w.weight[static_cast<std::size_t>(cr.edge)].e.p;
    }
    if (ok) shapes.push_back({mask, flux});
  }
  std::stable_sort(shapes.begin(), shapes.end(), [](const Shape& a, const Shape& b) {
    if (a.flux != b.flux) return a.flux < b.flux;
    return a.mask < b.mask;
  });
  return shapes;
}

std::optional<std::vector<char>> prune(const Complex& cx, const Shape& left, const Shape& right) {
  std::vector<char> removed(static_cast<std::size_t>(cx.ncells), 0);
  auto claim = [&](int cell) {
    if (removed[static_cast<std::size_t>(cell)]) return false;
    removed[static_cast<std::size_t>(cell)] = 1;
    return true;
  };
  for (int j = 0; j < static_cast<int>(cx.crossings.size()); ++j) {
    if (left.mask & (1u << j))
      if (!claim(cx.crossings[static_cast<std::size_t>(j)].right_cell)) return std::nullopt;
  }
  for (int j = 0; j < static_cast<int>(cx.crossings.size()); ++j) {
    if (right.mask & (1u << j))
      if (!claim(cx.crossings[static_cast<std::size_t>(j)].left_cell)) return std::nullopt;
  }
  return removed;
}

namespace {

// Signed q-count of the tilings of a pruned track segment: permutation sign
// times edge-weight product, summed. Must be sign-uniform and p-free.
LaurentPoly pruned_segment_sum(const WeightedComplex& w, const std::vector<char>& removed,
                               const std::vector<char>& banned) {
  const Complex& cx = *w.cx;
  std::vector<Tiling> ts = enumerate_tilings(cx, &removed, &banned);
  if (ts.empty()) return LaurentPoly::zero();

  std::vector<int> blacks, whites;
  for (int i = 0; i < cx.ncells; ++i) {
    if (removed[static_cast<std::size_t>(i)]) continue;
    (cx.color[static_cast<std::size_t>(i)] == 1 ? blacks : whites).push_back(i);
  }
  std::vector<int> white_pos(static_cast<std::size_t>(cx.ncells), -1);
  for (int j = 0; j < static_cast<int>(whites.size()); ++j)
    white_pos[static_cast<std::size_t>(whites[static_cast<std::size_t>(j)])] = j;

  LaurentPoly sum;
  for (const Tiling& t : ts) {
    Monomial prod = Monomial::one();
    for (int e : t.edges) prod = prod * w.weight[static_cast<std::size_t>(e)];
    std::vector<int> perm(blacks.size());
    for (std::size_t i = 0; i < blacks.size(); ++i)
      perm[i] = white_pos[static_cast<std::size_t>(t.partner[static_cast<std::size_t>(blacks[i])])];
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
    sum += LaurentPoly(prod);
  }
  if (sum.is_zero()) return sum;
  if (sum.uniform_sign() == 0)
    fail(Err::SignMixture, "pruned segment q-count has mixed signs");
  if (sum.min_pexp() != 0 || sum.max_pexp() != 0)
    fail(Err::InconsistentWeights, "pruned segment weights carry p");
  return sum;
}

} // namespace

ConnectionMatrix connection_matrix(const WeightedComplex& w) {
  const Complex& cx = *w.cx;
  ConnectionMatrix cm;
  cm.shapes = enumerate_shapes(w);

  std::vector<char> banned(cx.edges.size(), 0);
  for (const auto& cr : cx.crossings) banned[static_cast<std::size_t>(cr.edge)] = 1;

  // Left-attachment crossing monomial per shape; its q-power is credited to
  // the entry so that C_{Delta^n} = (C_Delta)^n holds on the nose.
  std::vector<Monomial> credit(cm.shapes.size(), Monomial::one());
  for (std::size_t s = 0; s < cm.shapes.size(); ++s) {
    for (int j = 0; j < static_cast<int>(cx.crossings.size()); ++j)
      if (cm.shapes[s].mask & (1u << j))
        credit[s] = credit[s] * w.weight[static_cast<std::size_t>(cx.crossings[static_cast<std::size_t>(j)].edge)];
    if (credit[s].e.p != cm.shapes[s].flux)
      fail(Err::InconsistentWeights, "shape flux does not match crossing weights");
  }

  // Group shapes by flux.
  std::map<int, std::vector<int>> by_flux;
  for (int s = 0; s < static_cast<int>(cm.shapes.size()); ++s)
    by_flux[cm.shapes[static_cast<std::size_t>(s)].flux].push_back(s);

  // Signed entries, then a diagonal +-1 similarity (plus one global sign)
  // makes every entry nonnegative.
  struct RawEntry {
    int sign = 0;
    LaurentPoly abs;
  };
  std::vector<FluxBlock> blocks;
  std::vector<std::vector<std::vector<RawEntry>>> raw;
  for (const auto& [flux, ids] : by_flux) {
    FluxBlock b;
    b.flux = flux;
    b.shape_ids = ids;
    std::size_t d = ids.size();
    b.entries.assign(d, std::vector<LaurentPoly>(d));
    raw.emplace_back(d, std::vector<RawEntry>(d));
    auto& rb = raw.back();
    for (std::size_t il = 0; il < d; ++il) {
      for (std::size_t ir = 0; ir < d; ++ir) {
        const Shape& l = cm.shapes[static_cast<std::size_t>(ids[il])];
        const Shape& r = cm.shapes[static_cast<std::size_t>(ids[ir])];
        auto removed = prune(cx, l, r);
        if (!removed) continue; // pruning undefined: entry 0
        LaurentPoly s = pruned_segment_sum(w, *removed, banned);
        if (s.is_zero()) continue;
        Monomial cred{credit[static_cast<std::size_t>(ids[il])].sign, 0,
                      credit[static_cast<std::size_t>(ids[il])].e.q};
        LaurentPoly signed_entry = s.times_monomial(cred);
        int es = signed_entry.uniform_sign();
        rb[il][ir].sign = es;
        rb[il][ir].abs = es > 0 ? signed_entry : -signed_entry;
      }
    }
    blocks.push_back(std::move(b));
  }

  // Solve tau(l) * tau(r) * beta = sign(l, r) over {+-1}; beta is global.
  std::vector<int> tau(cm.shapes.size(), 0);
  for (int beta : {1, -1}) {
    bool ok = true;
    std::fill(tau.begin(), tau.end(), 0);
    for (std::size_t bi = 0; bi < blocks.size() && ok; ++bi) {
      const auto& ids = blocks[bi].shape_ids;
      std::size_t d = ids.size();
      // Propagate within the block until stable.
      bool changed = true;
      while (changed && ok) {
        changed = false;
        for (std::size_t il = 0; il < d && ok; ++il)
          for (std::size_t ir = 0; ir < d && ok; ++ir) {
            int es = raw[bi][il][ir].sign;
            if (es == 0) continue;
            int& tl = tau[static_cast<std::size_t>(ids[il])];
            int& tr = tau[static_cast<std::size_t>(ids[ir])];
            if (tl != 0 && tr != 0) {
              if (tl * tr * beta != es) ok = false;
            } else if (tl != 0) {
              tr = es * beta * tl;
              changed = true;
            } else if (tr != 0) {
              tl = es * beta * tr;
              changed = true;
            }
          }
        if (!changed) {
          // Seed one unresolved shape that has some nonzero entry.
          for (std::size_t il = 0; il < d; ++il) {
            bool has_entry = false;
            for (std::size_t ir = 0; ir < d; ++ir)
              if (raw[bi][il][ir].sign != 0 || raw[bi][ir][il].sign != 0) has_entry = true;
            if (has_entry && tau[static_cast<std::size_t>(ids[il])] == 0) {
              tau[static_cast<std::size_t>(ids[il])] = 1;
              changed = true;
              break;
            }
          }
        }
      }
    }
    if (ok) {
      cm.block_sign = beta;
      for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& ids = blocks[bi].shape_ids;
        std::size_t d = ids.size();
        for (std::size_t il = 0; il < d; ++il)
          for (std::size_t ir = 0; ir < d; ++ir)
            if (raw[bi][il][ir].sign != 0)
              blocks[bi].entries[il][ir] = raw[bi][il][ir].abs;
      }
      cm.blocks = std::move(blocks);
      return cm;
    }
  }
  fail(Err::SignMixture, "connection matrix signs do not factor through shapes");
}

std::vector<std::vector<LaurentPoly>> block_power(const FluxBlock& b, int n) {
  std::size_t d = b.shape_ids.size();
  std::vector<std::vector<LaurentPoly>> acc(d, std::vector<LaurentPoly>(d));
  for (std::size_t i = 0; i < d; ++i) acc[i][i] = LaurentPoly::one();
  for (int step = 0; step < n; ++step) {
    std::vector<std::vector<LaurentPoly>> next(d, std::vector<LaurentPoly>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        if (acc[i][k].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) {
          if (b.entries[k][j].is_zero()) continue;
          next[i][j] += acc[i][k] * b.entries[k][j];
        }
      }
    acc = std::move(next);
  }
  return acc;
}

LaurentPoly power_and_trace(const ConnectionMatrix& cm, int n) {
  if (n < 1) fail(Err::BadInput, "cover degree must be >= 1");
  LaurentPoly total;
  for (const FluxBlock& b : cm.blocks) {
    auto pw = block_power(b, n);
    LaurentPoly tr;
    for (std::size_t i = 0; i < pw.size(); ++i) tr += pw[i][i];
    total += tr.times_monomial({1, b.flux, 0});
  }
  return total;
}

void mark_bi_active(ConnectionMatrix& cm, const BigRat& q0) {
  if (sgn(q0) <= 0) fail(Err::BadInput, "bi-activity requires q0 > 0");
  for (FluxBlock& b : cm.blocks) {
    std::size_t d = b.shape_ids.size();
    // Nonzero pattern; coefficients are nonnegative, so polynomial nonzero
    // and positive value at q0 agree. Assert it.
    std::vector<std::vector<char>> adj(d, std::vector<char>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const LaurentPoly& e = b.entries[i][j];
        if (e.is_zero()) continue;
        if (e.uniform_sign() <= 0) fail(Err::SignMixture, "entry with nonpositive coefficients");
        if (sgn(e.eval(BigRat(1), q0)) <= 0)
          fail(Err::InconsistentWeights, "entry pattern depends on q0");
        adj[i][j] = 1;
      }
    // Reachability to and from cycles. With finitely many shapes, a shape is
    // realised in the bi-infinite band iff a cycle reaches it and it reaches
    // a cycle.
    auto reach = [&](bool forward) {
      std::vector<std::vector<char>> r(d, std::vector<char>(d, 0));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) r[i][j] = forward ? adj[i][j] : adj[j][i];
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i)
          if (r[i][k])
            for (std::size_t j = 0; j < d; ++j)
              if (r[k][j]) r[i][j] = 1;
      return r;
    };
    auto fwd = reach(true), bwd = reach(false);
    std::vector<char> on_cycle(d, 0);
    for (std::size_t i = 0; i < d; ++i) on_cycle[i] = fwd[i][i];
    b.bi_active.clear();
    for (std::size_t i = 0; i < d; ++i) {
      bool from_cycle = false, to_cycle = false;
      for (std::size_t c = 0; c < d; ++c) {
        if (!on_cycle[c]) continue;
        if (fwd[c][i] || c == i) from_cycle = true;
        if (fwd[i][c] || c == i) to_cycle = true;
      }
      if (from_cycle && to_cycle) b.bi_active.push_back(static_cast<int>(i));
    }
  }
}

std::vector<std::vector<LaurentPoly>> bi_active_submatrix(const FluxBlock& b) {
  std::size_t d = b.bi_active.size();
  std::vector<std::vector<LaurentPoly>> sub(d, std::vector<LaurentPoly>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      sub[i][j] = b.entries[static_cast<std::size_t>(b.bi_active[i])]
                           [static_cast<std::size_t>(b.bi_active[j])];
  return sub;
}

PrimitivityResult primitivity_check(const std::vector<std::vector<LaurentPoly>>& block) {
  PrimitivityResult res;
  std::size_t d = block.size();
  if (d == 0) fail(Err::EmptyBlock, "primitivity check on empty block");
  res.dimension = static_cast<int>(d);
  std::vector<std::vector<char>> pat(d, std::vector<char>(d, 0)), acc;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) pat[i][j] = !block[i][j].is_zero();
  acc = pat;
  int cap = static_cast<int>(d * d) + 1;
  for (int n = 1; n <= cap; ++n) {
    bool all = true;
    for (std::size_t i = 0; i < d && all; ++i)
      for (std::size_t j = 0; j < d && all; ++j)
        if (!acc[i][j]) all = false;
    if (all) {
      res.primitive = true;
      res.witness_power = n;
      return res;
    }
    // acc = acc * pat (boolean).
    std::vector<std::vector<char>> next(d, std::vector<char>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        if (acc[i][k])
          for (std::size_t j = 0; j < d; ++j)
            if (pat[k][j]) next[i][j] = 1;
    acc = std::move(next);
  }
  return res;
}

} // namespace qflux
