#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qflux/cert.hpp"
#include "qflux/kasteleyn.hpp"
#include "qflux/roots.hpp"
#include "qflux/tiling.hpp"
#include "qflux/transfer.hpp"

namespace qflux {

// Everything the certifications need about one region, computed once.
// Heap-held and pinned: WeightedComplex points back into cx.
struct RegionPipeline {
  std::string id;
  GridRegion region;
  Classification cls;
  std::optional<Cut> cut;
  Complex cx;
  WeightedComplex weights;
  std::vector<Tiling> tilings;
  std::vector<Monomial> monomials; // per tiling
  std::vector<int> fluxes;         // per tiling
  LaurentPoly phi_det;
  LaurentPoly phi_enum;
  FlipGraph graph;
  std::vector<Wall> walls;
  bool wall_free = false;
  std::optional<ConnectionMatrix> cm; // annuli only
  std::map<int, LaurentPoly> cover_phi_cache;

  explicit RegionPipeline(GridRegion r) : region(std::move(r)) {}
  RegionPipeline(const RegionPipeline&) = delete;

  bool is_annulus() const { return cls.kind == RegionKind::Annulus; }
  LaurentPoly cover_phi(int n); // Kasteleyn determinant of the n-fold cover
};

std::unique_ptr<RegionPipeline> make_pipeline(const std::string& id, GridRegion region);

// Theorem certifications. Preconditions that do not hold produce SKIP with a
// reason, never a silent PASS.
Certification certify_theorem_a(RegionPipeline& p);
Certification certify_theorem_b(RegionPipeline& p, const BigRat& q0);
Certification certify_cover_relation(RegionPipeline& p, int n, const BigRat& q0);
Certification certify_perron(RegionPipeline& p, const BigRat& q0);
Certification certify_log_concavity(RegionPipeline& p, const BigRat& q0);
Certification certify_trace_formula(RegionPipeline& p, int n);
Certification certify_flip_structure(RegionPipeline& p);

// Theorem-DT regression over families of balanced sub-disks: exhaustive on
// the 4x4 grid plus `random_samples` seeded random sub-disks of the 5x5.
Certification certify_disk_family(int random_samples, unsigned seed);

} // namespace qflux
