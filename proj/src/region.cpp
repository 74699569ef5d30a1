#include "qflux/region.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace qflux {

std::string cell_name(const Cell& c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

GridRegion::GridRegion(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) fail(Err::EmptyRegion, "region has no cells");
  std::sort(cells_.begin(), cells_.end(), RowMajor{});
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
    index_.emplace(cells_[i], i);
    (cell_color(cells_[i]) == 1 ? n_black_ : n_white_)++;
  }
  // Edge connectivity.
  std::vector<char> seen(cells_.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    Cell c = cells_[static_cast<std::size_t>(queue.front())];
    queue.pop_front();
    for (auto [dx, dy] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}) {
      auto it = index_.find({c.x + dx, c.y + dy});
      if (it != index_.end() && !seen[static_cast<std::size_t>(it->second)]) {
        seen[static_cast<std::size_t>(it->second)] = 1;
        ++reached;
        queue.push_back(it->second);
      }
    }
  }
  if (reached != static_cast<int>(cells_.size()))
    fail(Err::DisconnectedRegion, "region is not edge-connected");
}

int GridRegion::index_of(const Cell& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) fail(Err::BadInput, "cell " + cell_name(c) + " not in region");
  return it->second;
}

GridRegion GridRegion::parse(const std::string& text) {
  std::vector<Cell> cells;
  std::istringstream in(text);
  std::string line;
  int y = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '%') continue; // comment line, not a grid row
    for (int x = 0; x < static_cast<int>(line.size()); ++x) {
      char ch = line[static_cast<std::size_t>(x)];
      if (ch == '#') cells.push_back({x, y});
      else if (ch != '.' && ch != ' ')
        fail(Err::BadCharacter, std::string("unexpected character '") + ch + "' at line " +
                                    std::to_string(lineno) + ", column " + std::to_string(x + 1));
    }
    ++y;
  }
  if (cells.empty()) fail(Err::EmptyRegion, "no '#' cells in input");
  return GridRegion(std::move(cells));
}

GridRegion GridRegion::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::BadInput, "cannot open region file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Classification classify(const GridRegion& r) {
  int minx = r.cells().front().x, maxx = minx, miny = r.cells().front().y, maxy = miny;
  for (const Cell& c : r.cells()) {
    minx = std::min(minx, c.x);
    maxx = std::max(maxx, c.x);
    miny = std::min(miny, c.y);
    maxy = std::max(maxy, c.y);
  }
  // Flood the complement inside a one-cell margin; the margin ring is all
  // complement and connected, so the unbounded component is found first.
  auto inside = [&](const Cell& c) {
    return c.x >= minx - 1 && c.x <= maxx + 1 && c.y >= miny - 1 && c.y <= maxy + 1;
  };
  std::set<Cell, RowMajor> visited;
  std::vector<std::vector<Cell>> components;
  for (int y = miny - 1; y <= maxy + 1; ++y) {
    for (int x = minx - 1; x <= maxx + 1; ++x) {
      Cell start{x, y};
      if (r.has(start) || visited.count(start)) continue;
      components.emplace_back();
      std::deque<Cell> queue{start};
      visited.insert(start);
      while (!queue.empty()) {
        Cell c = queue.front();
        queue.pop_front();
        components.back().push_back(c);
        for (auto [dx, dy] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}) {
          Cell nc{c.x + dx, c.y + dy};
          if (!inside(nc) || r.has(nc) || visited.count(nc)) continue;
          visited.insert(nc);
          queue.push_back(nc);
        }
      }
    }
  }
  Classification cls;
  cls.complement_components = static_cast<int>(components.size());
  if (components.size() == 1) {
    cls.kind = RegionKind::Disk;
  } else if (components.size() == 2) {
    cls.kind = RegionKind::Annulus;
    cls.hole = components[1]; // scan order finds the unbounded margin first
    std::sort(cls.hole.begin(), cls.hole.end(), RowMajor{});
  } else {
    cls.kind = RegionKind::Other;
  }
  return cls;
}

namespace {

// Cells flanking a lattice edge (a, b) with b = a + unit step.
std::pair<Cell, Cell> flanking(const LatticePoint& a, const LatticePoint& b) {
  if (a.x == b.x) { // vertical segment at x = a.x
    int y = std::min(a.y, b.y);
    return {Cell{a.x - 1, y}, Cell{a.x, y}};
  }
  int x = std::min(a.x, b.x); // horizontal segment at y = a.y
  return {Cell{x, a.y - 1}, Cell{x, a.y}};
}

// (left, right) cells relative to walking direction a -> b.
std::pair<Cell, Cell> sides_along(const LatticePoint& a, const LatticePoint& b) {
  auto [c1, c2] = flanking(a, b);
  int dx = b.x - a.x, dy = b.y - a.y;
  // c1 is the west cell (vertical edge) or north cell (horizontal edge).
  if (dy == -1) return {c1, c2}; // walking up: west is left
  if (dy == 1) return {c2, c1};  // walking down: east is left
  if (dx == 1) return {c1, c2};  // walking east: north is left
  return {c2, c1};               // walking west: south is left
}

struct BoundaryInfo {
  std::set<LatticePoint> inner; // vertices on the hole boundary
  std::set<LatticePoint> outer; // vertices on the outer boundary
};

BoundaryInfo boundary_vertices(const GridRegion& r, const Classification& cls) {
  BoundaryInfo b;
  std::set<Cell, RowMajor> hole(cls.hole.begin(), cls.hole.end(), RowMajor{});
  auto corners = [](const Cell& c) {
    return std::array<LatticePoint, 4>{LatticePoint{c.x, c.y}, {c.x + 1, c.y},
                                       {c.x, c.y + 1}, {c.x + 1, c.y + 1}};
  };
  std::set<LatticePoint> region_pts, hole_pts;
  for (const Cell& c : r.cells())
    for (const auto& p : corners(c)) region_pts.insert(p);
  for (const Cell& c : cls.hole)
    for (const auto& p : corners(c)) hole_pts.insert(p);
  for (const auto& p : region_pts) {
    if (hole_pts.count(p)) b.inner.insert(p);
    // A vertex touches the unbounded complement iff one of its four incident
    // cells is neither region nor hole.
    std::array<Cell, 4> around{Cell{p.x - 1, p.y - 1}, {p.x, p.y - 1}, {p.x - 1, p.y}, {p.x, p.y}};
    for (const Cell& c : around) {
      if (!r.has(c) && !hole.count(c)) {
        b.outer.insert(p);
        break;
      }
    }
  }
  return b;
}

bool interior_edge(const GridRegion& r, const LatticePoint& a, const LatticePoint& b) {
  auto [c1, c2] = flanking(a, b);
  return r.has(c1) && r.has(c2);
}

} // namespace

Cut compute_cut(const GridRegion& r, const Classification& cls) {
  if (cls.kind != RegionKind::Annulus) fail(Err::NotAnAnnulus, "cut requires an annulus");
  BoundaryInfo b = boundary_vertices(r, cls);

  const std::array<std::pair<int, int>, 4> dirs{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}}; // up,right,down,left
  std::optional<Cut> best;
  for (const auto& start : b.inner) { // set iterates in (x, y) order
    for (const auto& [dx, dy] : dirs) {
      std::vector<LatticePoint> path{start};
      LatticePoint cur = start;
      bool ok = false;
      while (true) {
        LatticePoint nxt{cur.x + dx, cur.y + dy};
        if (!interior_edge(r, cur, nxt)) break;
        path.push_back(nxt);
        cur = nxt;
        if (b.outer.count(cur)) {
          ok = true;
          break;
        }
        if (b.inner.count(cur)) break; // grazing the hole again: reject
      }
      if (!ok) continue;
      if (!best || path.size() < best->path.size()) {
        Cut cut;
        cut.path = path;
        cut.straight = true;
        best = cut;
      }
    }
  }

  if (!best) {
    // BFS in the interior-edge graph from the inner to the outer boundary.
    std::map<LatticePoint, LatticePoint> parent;
    std::deque<LatticePoint> queue;
    std::set<LatticePoint> seen;
    for (const auto& v : b.inner) {
      queue.push_back(v);
      seen.insert(v);
    }
    std::optional<LatticePoint> goal;
    while (!queue.empty() && !goal) {
      LatticePoint cur = queue.front();
      queue.pop_front();
      for (const auto& [dx, dy] : dirs) {
        LatticePoint nxt{cur.x + dx, cur.y + dy};
        if (seen.count(nxt) || !interior_edge(r, cur, nxt)) continue;
        seen.insert(nxt);
        parent[nxt] = cur;
        if (b.outer.count(nxt)) {
          goal = nxt;
          break;
        }
        queue.push_back(nxt);
      }
    }
    if (!goal) fail(Err::NotAnAnnulus, "no cut path from inner to outer boundary");
    std::vector<LatticePoint> rev{*goal};
    while (parent.count(rev.back())) rev.push_back(parent[rev.back()]);
    Cut cut;
    cut.path.assign(rev.rbegin(), rev.rend());
    cut.straight = false;
    best = cut;
  }

  for (std::size_t i = 0; i + 1 < best->path.size(); ++i) {
    auto [left, right] = sides_along(best->path[i], best->path[i + 1]);
    best->crossings.push_back({left, right});
  }
  return *best;
}

// ---------------------------------------------------------------------------

void Complex::build_edge_index() const {
  if (!edge_index_.empty() || edges.empty()) return;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    edge_index_[{edges[static_cast<std::size_t>(i)].u, edges[static_cast<std::size_t>(i)].v}] = i;
    edge_index_[{edges[static_cast<std::size_t>(i)].v, edges[static_cast<std::size_t>(i)].u}] = i;
  }
}

int Complex::edge_between(int a, int b) const {
  build_edge_index();
  auto it = edge_index_.find({a, b});
  return it == edge_index_.end() ? -1 : it->second;
}

int Complex::component_count() const {
  std::vector<int> uf(static_cast<std::size_t>(ncells));
  for (int i = 0; i < ncells; ++i) uf[static_cast<std::size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (uf[static_cast<std::size_t>(x)] != x) {
      uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
      x = uf[static_cast<std::size_t>(x)];
    }
    return x;
  };
  int comps = ncells;
  for (const auto& e : edges) {
    int a = find(e.u), b = find(e.v);
    if (a != b) {
      uf[static_cast<std::size_t>(a)] = b;
      --comps;
    }
  }
  return comps;
}

int Complex::cycle_rank() const {
  return static_cast<int>(edges.size()) - ncells + component_count();
}

namespace {

void discover_blocks(Complex& cx) {
  for (int u = 0; u < cx.ncells; ++u) {
    int e = cx.nbr[static_cast<std::size_t>(u)][Dir::E];
    int s = cx.nbr[static_cast<std::size_t>(u)][Dir::S];
    if (e < 0 || s < 0) continue;
    int se1 = cx.nbr[static_cast<std::size_t>(s)][Dir::E];
    int se2 = cx.nbr[static_cast<std::size_t>(e)][Dir::S];
    if (se1 < 0 || se1 != se2) continue;
    CBlock b;
    b.tl = u;
    b.e_top = cx.edge_between(u, e);
    b.e_bottom = cx.edge_between(s, se1);
    b.e_left = cx.edge_between(u, s);
    b.e_right = cx.edge_between(e, se1);
    b.tl_white = cx.color[static_cast<std::size_t>(u)] == 0;
    cx.blocks.push_back(b);
  }
}

} // namespace

Complex build_complex(const GridRegion& r, const Cut* cut) {
  Complex cx;
  cx.ncells = r.size();
  cx.base_cells = r.size();
  cx.color.resize(static_cast<std::size_t>(cx.ncells));
  cx.cell_names.resize(static_cast<std::size_t>(cx.ncells));
  cx.nbr.assign(static_cast<std::size_t>(cx.ncells), {-1, -1, -1, -1});
  for (int i = 0; i < cx.ncells; ++i) {
    const Cell& c = r.cells()[static_cast<std::size_t>(i)];
    cx.color[static_cast<std::size_t>(i)] = cell_color(c);
    cx.cell_names[static_cast<std::size_t>(i)] = cell_name(c);
    (cell_color(c) == 1 ? cx.n_black : cx.n_white)++;
  }
  for (int i = 0; i < cx.ncells; ++i) {
    const Cell& c = r.cells()[static_cast<std::size_t>(i)];
    Cell east{c.x + 1, c.y}, south{c.x, c.y + 1};
    if (r.has(east)) {
      int j = r.index_of(east);
      cx.edges.push_back({i, j, true});
      cx.nbr[static_cast<std::size_t>(i)][Dir::E] = j;
      cx.nbr[static_cast<std::size_t>(j)][Dir::W] = i;
    }
    if (r.has(south)) {
      int j = r.index_of(south);
      cx.edges.push_back({i, j, false});
      cx.nbr[static_cast<std::size_t>(i)][Dir::S] = j;
      cx.nbr[static_cast<std::size_t>(j)][Dir::N] = i;
    }
  }
  discover_blocks(cx);
  if (cut) {
    for (const auto& crossing : cut->crossings) {
      int l = r.index_of(crossing.left);
      int rr = r.index_of(crossing.right);
      int e = cx.edge_between(l, rr);
      if (e < 0) fail(Err::BadInput, "cut crossing is not an adjacency");
      cx.crossings.push_back({e, l, rr});
    }
  }
  return cx;
}

Complex build_cover(const Complex& base, int n) {
  if (n < 1) fail(Err::BadInput, "cover degree must be >= 1");
  if (base.crossings.empty()) fail(Err::BadInput, "cover requires a cut annulus complex");
  if (n == 1) return base;

  Complex cx;
  cx.ncells = base.ncells * n;
  cx.base_cells = base.ncells;
  cx.cover_degree = n;
  cx.color.resize(static_cast<std::size_t>(cx.ncells));
  cx.cell_names.resize(static_cast<std::size_t>(cx.ncells));
  cx.nbr.assign(static_cast<std::size_t>(cx.ncells), {-1, -1, -1, -1});
  auto lift = [&](int copy, int cell) { return copy * base.ncells + cell; };
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < base.ncells; ++c) {
      int id = lift(i, c);
      cx.color[static_cast<std::size_t>(id)] = base.color[static_cast<std::size_t>(c)];
      cx.cell_names[static_cast<std::size_t>(id)] =
          "d" + std::to_string(i) + ":" + base.cell_names[static_cast<std::size_t>(c)];
      (base.color[static_cast<std::size_t>(c)] == 1 ? cx.n_black : cx.n_white)++;
    }
  }

  std::vector<char> is_crossing(base.edges.size(), 0);
  for (const auto& cr : base.crossings) is_crossing[static_cast<std::size_t>(cr.edge)] = 1;

  auto connect = [&](int u, int v, bool horizontal) {
    cx.edges.push_back({u, v, horizontal});
    if (horizontal) {
      cx.nbr[static_cast<std::size_t>(u)][Dir::E] = v;
      cx.nbr[static_cast<std::size_t>(v)][Dir::W] = u;
    } else {
      cx.nbr[static_cast<std::size_t>(u)][Dir::S] = v;
      cx.nbr[static_cast<std::size_t>(v)][Dir::N] = u;
    }
  };

  // Copy-internal edges first (all non-crossing edges of each copy), then the
  // n cut copies: crossing j of the base becomes an edge from the left cell
  // in copy i to the right cell in copy i+1 (mod n).
  for (int i = 0; i < n; ++i)
    for (const auto& e : base.edges) {
      std::size_t eid = static_cast<std::size_t>(&e - base.edges.data());
      if (is_crossing[eid]) continue;
      connect(lift(i, e.u), lift(i, e.v), e.horizontal);
    }
  std::vector<CrossingRef> wrap;
  for (int i = 0; i < n; ++i) {
    for (const auto& cr : base.crossings) {
      const CEdge& e = base.edges[static_cast<std::size_t>(cr.edge)];
      int lcopy = i, rcopy = (i + 1) % n;
      int lu = lift(lcopy, cr.left_cell), rv = lift(rcopy, cr.right_cell);
      // Preserve the geometric orientation of the base edge.
      int u, v;
      if (cr.left_cell == e.u) {
        u = lu;
        v = rv;
      } else {
        u = rv;
        v = lu;
      }
      connect(u, v, e.horizontal);
      if (i == n - 1) wrap.push_back({static_cast<int>(cx.edges.size()) - 1, lu, rv});
    }
  }
  cx.crossings = std::move(wrap);
  discover_blocks(cx);
  return cx;
}

} // namespace qflux
