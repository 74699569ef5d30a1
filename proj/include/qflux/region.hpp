#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qflux/error.hpp"

namespace qflux {

struct Cell {
  int x = 0;
  int y = 0; // grows downward, matching text input
  auto operator<=>(const Cell&) const = default;
};

// Row-major comparison: by y, then x. Cell enumeration order everywhere.
struct RowMajor {
  bool operator()(const Cell& a, const Cell& b) const {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  }
};

inline int cell_color(const Cell& c) { return ((c.x + c.y) % 2 + 2) % 2; } // 0 white, 1 black

// A finite, edge-connected set of unit cells with checkerboard coloring.
class GridRegion {
 public:
  explicit GridRegion(std::vector<Cell> cells); // validates: nonempty, connected
  static GridRegion parse(const std::string& text);
  static GridRegion load(const std::string& path);

  const std::vector<Cell>& cells() const { return cells_; } // row-major sorted
  int size() const { return static_cast<int>(cells_.size()); }
  bool has(const Cell& c) const { return index_.count(c) != 0; }
  int index_of(const Cell& c) const;
  int black_count() const { return n_black_; }
  int white_count() const { return n_white_; }
  bool balanced() const { return n_black_ == n_white_; }

 private:
  std::vector<Cell> cells_;
  std::map<Cell, int, RowMajor> index_;
  int n_black_ = 0, n_white_ = 0;
};

enum class RegionKind { Disk, Annulus, Other };

struct Classification {
  RegionKind kind = RegionKind::Other;
  std::vector<Cell> hole; // bounded complement component (annulus only)
  int complement_components = 0;
};

Classification classify(const GridRegion& r);

struct LatticePoint {
  int x = 0;
  int y = 0;
  auto operator<=>(const LatticePoint&) const = default;
};

// A domino position separated by the cut, oriented relative to the
// inner-to-outer direction of the cut path.
struct Crossing {
  Cell left;
  Cell right;
};

struct Cut {
  std::vector<LatticePoint> path; // simple, inner boundary to outer boundary
  std::vector<Crossing> crossings; // in path order
  bool straight = false;
};

// Deterministic cut: shortest straight axis-aligned path, ties broken by
// smallest (x, y) start vertex then direction order up/right/down/left;
// BFS fallback when no straight cut exists.
Cut compute_cut(const GridRegion& r, const Classification& cls);

// ---------------------------------------------------------------------------
// Cell complex: the abstract structure all downstream algorithms run on.
// Base regions embed in the plane; n-fold covers for n >= 2 generally do not,
// so adjacency is stored as typed (east/south) neighbor relations and flip
// blocks are discovered by closing the neighbor maps.

enum Dir { E = 0, S = 1, W = 2, N = 3 };

struct CEdge {
  int u = -1; // west (horizontal) or north (vertical) endpoint
  int v = -1;
  bool horizontal = false;
};

struct CBlock {
  int tl = -1; // top-left cell
  int e_top = -1, e_bottom = -1, e_left = -1, e_right = -1;
  bool tl_white = false;
};

struct CrossingRef {
  int edge = -1;
  int left_cell = -1;
  int right_cell = -1;
};

struct Complex {
  int ncells = 0;
  std::vector<int> color; // 0 white, 1 black
  std::vector<std::string> cell_names;
  std::vector<std::array<int, 4>> nbr; // per cell: E,S,W,N neighbor or -1
  std::vector<CEdge> edges;
  std::vector<CBlock> blocks;
  std::vector<CrossingRef> crossings; // cut path order; [0] carries weight p
  int n_black = 0, n_white = 0;
  int cover_degree = 1;
  int base_cells = 0;

  bool balanced() const { return n_black == n_white; }
  int edge_between(int a, int b) const; // -1 if none
  int cycle_rank() const;               // edges - cells + components
  int component_count() const;

 private:
  mutable std::map<std::pair<int, int>, int> edge_index_;
  void build_edge_index() const;
};

// Base complex; for annuli pass the cut so crossing edges are marked.
Complex build_complex(const GridRegion& r, const Cut* cut = nullptr);

// n-fold cover: n copies of the cut-open complex glued cyclically. The
// marked crossings of the result are the wrap-around copies of the cut.
Complex build_cover(const Complex& base, int n);

std::string cell_name(const Cell& c);

} // namespace qflux
