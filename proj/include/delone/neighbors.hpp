#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "delone/tiling.hpp"

namespace delone {

/// Symmetric neighbor relation over a point set. Pairs are stored once with
/// a < b; the diagonal is implied. S is the relation parameter: every pair
/// satisfies ||x-y|| <= S.
struct NeighborRelation {
  PointSetPtr ps;
  std::vector<std::pair<int, int>> pairs;
  double S = 0.0;
  std::string kind;

  std::vector<std::vector<int>> adjacency() const;
  std::size_t degree_of(int id) const;
};

/// Facet relation N_V: cells sharing a boundary segment longer than eps_len.
/// S is the largest realized pair distance.
NeighborRelation build_voronoi_relation(const TilingSystem& ts, double eps_len = 1e-9);

/// Maximal relation N_max: all pairs with 0 < ||x-y|| <= 2R; S = 2R.
NeighborRelation build_max_relation(PointSetPtr ps, double R);

/// Canonical relation N_can: cells with nonempty intersection, corner-only
/// contacts included (polygon distance below 1e-9 of the spacing scale).
NeighborRelation build_canonical_relation(const TilingSystem& ts);

/// External edge list with declared parameter S; symmetrized, (N1) checked
/// eagerly.
NeighborRelation ingest_relation(PointSetPtr ps, const std::vector<std::pair<int, int>>& pairs,
                                 double S);

struct AxiomReport {
  bool n0_pass = true;  // storage is symmetric by construction
  bool n1_pass = true;
  std::vector<std::pair<int, int>> n1_violations;
  int n2_samples = 0;
  int n2_failures = 0;
  std::vector<std::pair<int, int>> n2_failed_pairs;
  double margin = 0.0;
  std::uint64_t seed = 0;
  bool flagged_empty = false;

  bool pass() const { return n0_pass && n1_pass && n2_failures == 0 && !flagged_empty; }
};

/// (N0),(N1) exhaustively; (N2) on sampled interior pairs by breadth-first
/// search restricted to the tube [x,y] + B_S.
AxiomReport validate_axioms(const NeighborRelation& rel, double margin, int n2_samples,
                            std::uint64_t seed);

struct DegreeStats {
  int min_deg = 0;
  int max_deg = 0;
  std::map<int, int> histogram;
  double bound = 0.0;  // ((S+r)/r)^N
  int interior_count = 0;
  bool bound_satisfied = true;
};

/// Interior degree statistics against the packing bound ((S+r)/r)^N.
DegreeStats degree_stats(const NeighborRelation& rel, const DeloneParams& params, double margin);

}  // namespace delone
