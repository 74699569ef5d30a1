#include "qflux/tiling.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace qflux {

std::vector<Tiling> enumerate_tilings(const Complex& cx, const std::vector<char>* removed_cells,
                                      const std::vector<char>* banned_edges) {
  std::vector<Tiling> out;
  std::vector<int> partner(static_cast<std::size_t>(cx.ncells), -1);
  std::vector<int> used_edges;
  std::vector<char> removed(static_cast<std::size_t>(cx.ncells), 0);
  if (removed_cells) removed = *removed_cells;

  int active = 0;
  for (int i = 0; i < cx.ncells; ++i)
    if (!removed[static_cast<std::size_t>(i)]) ++active;
  if (active % 2 != 0) return out;

  std::vector<std::array<int, 4>> nbr_edge(static_cast<std::size_t>(cx.ncells), {-1, -1, -1, -1});
  for (int c = 0; c < cx.ncells; ++c)
    for (int d = 0; d < 4; ++d) {
      int o = cx.nbr[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
      if (o >= 0) nbr_edge[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] =
          cx.edge_between(c, o);
    }

  std::function<void(int)> recurse = [&](int from) {
    int cell = -1;
    for (int i = from; i < cx.ncells; ++i) {
      if (!removed[static_cast<std::size_t>(i)] && partner[static_cast<std::size_t>(i)] < 0) {
        cell = i;
        break;
      }
    }
    if (cell < 0) {
      Tiling t;
      t.partner = partner;
      t.edges = used_edges;
      std::sort(t.edges.begin(), t.edges.end());
      out.push_back(std::move(t));
      return;
    }
    for (int d = 0; d < 4; ++d) {
      int o = cx.nbr[static_cast<std::size_t>(cell)][static_cast<std::size_t>(d)];
      if (o < 0 || removed[static_cast<std::size_t>(o)] || partner[static_cast<std::size_t>(o)] >= 0)
        continue;
      int via = nbr_edge[static_cast<std::size_t>(cell)][static_cast<std::size_t>(d)];
      if (banned_edges && (*banned_edges)[static_cast<std::size_t>(via)]) continue;
      partner[static_cast<std::size_t>(cell)] = o;
      partner[static_cast<std::size_t>(o)] = cell;
      used_edges.push_back(via);
      recurse(cell + 1);
      used_edges.pop_back();
      partner[static_cast<std::size_t>(cell)] = -1;
      partner[static_cast<std::size_t>(o)] = -1;
    }
  };
  recurse(0);
  return out;
}

BigInt matching_permanent(const Complex& cx) {
  std::vector<int> blacks, whites;
  for (int i = 0; i < cx.ncells; ++i)
    (cx.color[static_cast<std::size_t>(i)] == 1 ? blacks : whites).push_back(i);
  if (blacks.size() != whites.size()) return BigInt(0);
  int n = static_cast<int>(blacks.size());
  if (n > 24) fail(Err::BadInput, "permanent oracle is limited to 24 cells per color");
  std::vector<int> col_of(static_cast<std::size_t>(cx.ncells), -1);
  for (int j = 0; j < n; ++j) col_of[static_cast<std::size_t>(whites[static_cast<std::size_t>(j)])] = j;
  std::vector<unsigned> row_mask(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < 4; ++d) {
      int o = cx.nbr[static_cast<std::size_t>(blacks[static_cast<std::size_t>(i)])][static_cast<std::size_t>(d)];
      if (o >= 0) row_mask[static_cast<std::size_t>(i)] |= 1u << col_of[static_cast<std::size_t>(o)];
    }
  // DP over used-column subsets, one black row at a time.
  std::map<unsigned, BigInt> dp{{0u, BigInt(1)}};
  for (int i = 0; i < n; ++i) {
    std::map<unsigned, BigInt> next;
    for (const auto& [mask, count] : dp) {
      unsigned avail = row_mask[static_cast<std::size_t>(i)] & ~mask;
      while (avail) {
        unsigned bit = avail & (0u - avail);
        avail ^= bit;
        next[mask | bit] += count;
      }
    }
    dp = std::move(next);
  }
  BigInt total(0);
  for (const auto& [mask, count] : dp) total += count;
  return total;
}

std::vector<FlipMove> flips_of(const Complex& cx, const Tiling& t) {
  std::vector<FlipMove> moves;
  std::vector<char> used(cx.edges.size(), 0);
  for (int e : t.edges) used[static_cast<std::size_t>(e)] = 1;
  for (int b = 0; b < static_cast<int>(cx.blocks.size()); ++b) {
    const CBlock& blk = cx.blocks[static_cast<std::size_t>(b)];
    bool horiz = used[static_cast<std::size_t>(blk.e_top)] && used[static_cast<std::size_t>(blk.e_bottom)];
    bool vert = used[static_cast<std::size_t>(blk.e_left)] && used[static_cast<std::size_t>(blk.e_right)];
    if (!horiz && !vert) continue;
    FlipMove m;
    m.block = b;
    m.from_horizontal = horiz;
    // A positive flip multiplies the tiling monomial by q. With the block
    // relation oriented by the color of the top-left cell, that means
    // horizontal -> vertical on white-TL blocks and the reverse on black-TL.
    bool to_vertical = horiz;
    m.sign = (to_vertical == blk.tl_white) ? 1 : -1;
    moves.push_back(m);
  }
  return moves;
}

Tiling apply_flip(const Complex& cx, const Tiling& t, const FlipMove& m) {
  const CBlock& blk = cx.blocks[static_cast<std::size_t>(m.block)];
  Tiling r = t;
  auto drop = [&](int e) {
    auto it = std::find(r.edges.begin(), r.edges.end(), e);
    if (it == r.edges.end()) fail(Err::BadInput, "flip does not apply to this tiling");
    r.edges.erase(it);
  };
  auto put = [&](int e) { r.edges.push_back(e); };
  if (m.from_horizontal) {
    drop(blk.e_top);
    drop(blk.e_bottom);
    put(blk.e_left);
    put(blk.e_right);
  } else {
    drop(blk.e_left);
    drop(blk.e_right);
    put(blk.e_top);
    put(blk.e_bottom);
  }
  std::sort(r.edges.begin(), r.edges.end());
  for (auto& p : r.partner) p = -1;
  for (int e : r.edges) {
    const CEdge& ed = cx.edges[static_cast<std::size_t>(e)];
    r.partner[static_cast<std::size_t>(ed.u)] = ed.v;
    r.partner[static_cast<std::size_t>(ed.v)] = ed.u;
  }
  return r;
}

FlipGraph flip_graph(const Complex& cx, const std::vector<Tiling>& tilings,
                     const std::vector<int>& fluxes) {
  if (fluxes.size() != tilings.size()) fail(Err::BadInput, "flux list size mismatch");
  FlipGraph g;
  g.flux = fluxes;
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(tilings.size()); ++i)
    index[tilings[static_cast<std::size_t>(i)].edges] = i;
  for (int i = 0; i < static_cast<int>(tilings.size()); ++i) {
    for (const FlipMove& m : flips_of(cx, tilings[static_cast<std::size_t>(i)])) {
      Tiling next = apply_flip(cx, tilings[static_cast<std::size_t>(i)], m);
      auto it = index.find(next.edges);
      if (it == index.end()) fail(Err::BadInput, "flip left the enumerated tiling set");
      int j = it->second;
      if (i < j) g.edges.push_back({i, j, m.sign, m.block});
    }
  }
  // Components.
  g.component.assign(tilings.size(), -1);
  std::vector<std::vector<int>> adj(tilings.size());
  for (const auto& e : g.edges) {
    adj[static_cast<std::size_t>(e.a)].push_back(e.b);
    adj[static_cast<std::size_t>(e.b)].push_back(e.a);
  }
  for (int i = 0; i < static_cast<int>(tilings.size()); ++i) {
    if (g.component[static_cast<std::size_t>(i)] >= 0) continue;
    int id = g.component_count++;
    std::deque<int> queue{i};
    g.component[static_cast<std::size_t>(i)] = id;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : adj[static_cast<std::size_t>(u)])
        if (g.component[static_cast<std::size_t>(v)] < 0) {
          g.component[static_cast<std::size_t>(v)] = id;
          queue.push_back(v);
        }
    }
  }
  return g;
}

Certification check_flux_connectivity(const FlipGraph& g) {
  Certification cert;
  cert.name = "flux_connectivity";
  std::map<int, std::set<int>> comps_by_flux;
  std::map<int, int> size_by_flux;
  for (int i = 0; i < static_cast<int>(g.flux.size()); ++i) {
    comps_by_flux[g.flux[static_cast<std::size_t>(i)]].insert(g.component[static_cast<std::size_t>(i)]);
    size_by_flux[g.flux[static_cast<std::size_t>(i)]]++;
  }
  bool ok = true;
  Json classes = Json::object();
  for (const auto& [f, comps] : comps_by_flux) {
    classes[std::to_string(f)] = {{"tilings", size_by_flux[f]},
                                  {"components", comps.size()}};
    if (comps.size() != 1) ok = false;
  }
  cert.witness["flux_classes"] = classes;
  cert.verdict = ok ? Verdict::PASS : Verdict::FAIL;
  if (!ok) cert.witness["counterexample"] = "some flux class splits into several flip components";
  return cert;
}

Certification exactness_check(const FlipGraph& g) {
  Certification cert;
  cert.name = "flip_sign_exactness";
  int n = static_cast<int>(g.flux.size());
  // Potential along a BFS tree; every non-tree edge closes a basis cycle.
  std::vector<long> eta(static_cast<std::size_t>(n), 0);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n)); // (to, signed)
  for (const auto& e : g.edges) {
    adj[static_cast<std::size_t>(e.a)].push_back({e.b, e.sign});
    adj[static_cast<std::size_t>(e.b)].push_back({e.a, -e.sign});
  }
  int cycles = 0, bad = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    seen[static_cast<std::size_t>(s)] = 1;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (auto [v, sign] : adj[static_cast<std::size_t>(u)]) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          eta[static_cast<std::size_t>(v)] = eta[static_cast<std::size_t>(u)] + sign;
          queue.push_back(v);
        }
      }
    }
  }
  for (const auto& e : g.edges) {
    long total = eta[static_cast<std::size_t>(e.a)] + e.sign - eta[static_cast<std::size_t>(e.b)];
    if (total != 0) ++bad;
    ++cycles;
  }
  cert.witness["basis_cycles_checked"] = cycles;
  cert.verdict = bad == 0 ? Verdict::PASS : Verdict::FAIL;
  if (bad) cert.witness["counterexample"] = std::to_string(bad) + " basis cycles with nonzero signed sum";
  return cert;
}

namespace {

struct LatticeEdge {
  LatticePoint a, b; // a < b
  auto operator<=>(const LatticeEdge&) const = default;
};

LatticeEdge make_edge(LatticePoint a, LatticePoint b) {
  if (b < a) std::swap(a, b);
  return {a, b};
}

// The lattice edge shared by two adjacent cells.
LatticeEdge dual_edge(const Cell& c1, const Cell& c2) {
  if (c1.y == c2.y) { // horizontal pair: shared vertical side
    int x = std::max(c1.x, c2.x);
    return make_edge({x, c1.y}, {x, c1.y + 1});
  }
  int y = std::max(c1.y, c2.y); // vertical pair: shared horizontal side
  return make_edge({c1.x, y}, {c1.x + 1, y});
}

} // namespace

std::vector<Wall> detect_walls(const GridRegion& r, const Classification& cls,
                               const Complex& cx, const std::vector<Tiling>& tilings) {
  if (cls.kind != RegionKind::Annulus)
    fail(Err::NotAnAnnulus, "walls are defined for annuli only");
  if (tilings.empty()) fail(Err::UntileableRegion, "no tilings to inspect");

  std::vector<char> crossed(cx.edges.size(), 0);
  for (const auto& t : tilings)
    for (int e : t.edges) crossed[static_cast<std::size_t>(e)] = 1;

  // Never-crossed edge set: boundary sides plus the duals of adjacencies no
  // tiling uses.
  std::set<LatticeEdge> never, interior_never;
  for (std::size_t e = 0; e < cx.edges.size(); ++e) {
    if (crossed[e]) continue;
    const Cell& c1 = r.cells()[static_cast<std::size_t>(cx.edges[e].u)];
    const Cell& c2 = r.cells()[static_cast<std::size_t>(cx.edges[e].v)];
    LatticeEdge le = dual_edge(c1, c2);
    never.insert(le);
    interior_never.insert(le);
  }
  for (const Cell& c : r.cells()) {
    std::array<std::pair<Cell, LatticeEdge>, 4> sides{
        std::pair{Cell{c.x + 1, c.y}, make_edge({c.x + 1, c.y}, {c.x + 1, c.y + 1})},
        {Cell{c.x - 1, c.y}, make_edge({c.x, c.y}, {c.x, c.y + 1})},
        {Cell{c.x, c.y + 1}, make_edge({c.x, c.y + 1}, {c.x + 1, c.y + 1})},
        {Cell{c.x, c.y - 1}, make_edge({c.x, c.y}, {c.x + 1, c.y})}};
    for (const auto& [other, le] : sides)
      if (!r.has(other)) never.insert(le);
  }

  // Reference ray: straight up from the centre of the first hole cell. A
  // horizontal lattice edge [x, x+1] x {y} crosses it iff x == hx, y <= hy.
  Cell h0 = cls.hole.front();
  auto ray_weight = [&](const LatticePoint& from, const LatticePoint& to) {
    if (from.y != to.y) return 0; // vertical edges never cross the vertical ray
    int x = std::min(from.x, to.x);
    if (x != h0.x || from.y > h0.y) return 0;
    return to.x > from.x ? 1 : -1;
  };

  // Potential BFS: an inconsistency means a cycle with nonzero winding.
  std::map<LatticePoint, std::vector<LatticePoint>> adj;
  for (const auto& e : never) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<Wall> walls;
  std::map<LatticePoint, int> psi;
  std::map<LatticePoint, LatticePoint> parent;
  for (const auto& [start, nbrs] : adj) {
    if (psi.count(start)) continue;
    psi[start] = 0;
    std::deque<LatticePoint> queue{start};
    while (!queue.empty()) {
      LatticePoint u = queue.front();
      queue.pop_front();
      for (const auto& v : adj[u]) {
        int w = ray_weight(u, v);
        auto it = psi.find(v);
        if (it == psi.end()) {
          psi[v] = psi[u] + w;
          parent[v] = u;
          queue.push_back(v);
        } else if (it->second != psi[u] + w) {
          // Winding cycle: tree path v -> ... -> u plus edge (u, v).
          std::vector<LatticePoint> pu{u}, pv{v};
          while (parent.count(pu.back())) pu.push_back(parent[pu.back()]);
          while (parent.count(pv.back())) pv.push_back(parent[pv.back()]);
          // Trim to the common suffix root, then join.
          std::set<LatticePoint> on_pu(pu.begin(), pu.end());
          std::size_t meet = 0;
          while (meet < pv.size() && !on_pu.count(pv[meet])) ++meet;
          std::vector<LatticePoint> cycle;
          for (const auto& p : pu) {
            cycle.push_back(p);
            if (meet < pv.size() && p == pv[meet]) break;
          }
          for (std::size_t k = meet; k-- > 0;) cycle.push_back(pv[k]);
          Wall wall;
          wall.cycle = cycle;
          for (std::size_t k = 0; k + 1 < cycle.size(); ++k)
            if (interior_never.count(make_edge(cycle[k], cycle[k + 1]))) ++wall.interior_edges;
          if (interior_never.count(make_edge(cycle.back(), cycle.front()))) ++wall.interior_edges;
          if (wall.interior_edges > 0) walls.push_back(std::move(wall));
        }
      }
    }
    if (!walls.empty()) break;
  }

  // Ladder clause: an annulus with no 2x2 block admits no flips at all, so
  // every tiling runs along a width-1 band and both boundary curves are
  // walls of that band.
  if (walls.empty() && cx.blocks.empty()) {
    Wall inner, outer;
    inner.note = "inner boundary of the flip-free band";
    outer.note = "outer boundary of the flip-free band";
    walls.push_back(inner);
    walls.push_back(outer);
  }
  return walls;
}

} // namespace qflux
