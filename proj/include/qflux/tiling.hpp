#pragma once

#include <optional>
#include <vector>

#include "qflux/cert.hpp"
#include "qflux/region.hpp"

namespace qflux {

// A perfect matching of the complex, stored both as per-cell partners and as
// the sorted list of used edge ids.
struct Tiling {
  std::vector<int> partner;
  std::vector<int> edges;
  bool operator==(const Tiling& o) const { return edges == o.edges; }
};

// All tilings, by cell-ordered backtracking (always match the first
// uncovered cell, partners tried in E,S,W,N order). Deterministic order;
// empty if untileable. Optional filters: cells to drop (prunings) and edges
// that may not be used (the cut crossings of a track segment).
std::vector<Tiling> enumerate_tilings(const Complex& cx,
                                      const std::vector<char>* removed_cells = nullptr,
                                      const std::vector<char>* banned_edges = nullptr);

// Number of perfect matchings as the permanent of the black/white adjacency
// matrix, by Ryser-style subset DP. Independent oracle for small instances.
BigInt matching_permanent(const Complex& cx);

struct FlipMove {
  int block = -1;              // index into Complex::blocks
  bool from_horizontal = true; // source tiling covers the block with 2 horizontals
  int sign = 0;                // +1: volume increases by one
};

std::vector<FlipMove> flips_of(const Complex& cx, const Tiling& t);
Tiling apply_flip(const Complex& cx, const Tiling& t, const FlipMove& m);

struct FlipEdge {
  int a = -1, b = -1; // tiling indices, sign oriented a -> b
  int sign = 0;
  int block = -1;
};

struct FlipGraph {
  std::vector<int> flux;       // per tiling
  std::vector<FlipEdge> edges; // deduplicated, a < b
  std::vector<int> component;  // per tiling
  int component_count = 0;
};

// fluxes: the Kasteleyn p-exponent per tiling (all zero for disks).
FlipGraph flip_graph(const Complex& cx, const std::vector<Tiling>& tilings,
                     const std::vector<int>& fluxes);

// PASS iff every flux class is one connected component.
Certification check_flux_connectivity(const FlipGraph& g);

// PASS iff the signed flip sum vanishes on a cycle basis of every component.
Certification exactness_check(const FlipGraph& g);

// A closed lattice path of never-crossed edges winding around the hole.
struct Wall {
  std::vector<LatticePoint> cycle;
  int interior_edges = 0; // edges of the cycle interior to the region
  std::string note;       // set for the no-flip (ladder) boundary walls
};

// Brute-force wall detection from the full enumeration; annuli only.
std::vector<Wall> detect_walls(const GridRegion& r, const Classification& cls,
                               const Complex& cx, const std::vector<Tiling>& tilings);

} // namespace qflux
