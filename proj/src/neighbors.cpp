#include "delone/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include "delone/grid_index.hpp"

namespace delone {

std::vector<std::vector<int>> NeighborRelation::adjacency() const {
  std::vector<std::vector<int>> adj(ps->size());
  for (const auto& [a, b] : pairs) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

std::size_t NeighborRelation::degree_of(int id) const {
  std::size_t d = 0;
  for (const auto& [a, b] : pairs) {
    if (a == id || b == id) ++d;
  }
  return d;
}

namespace {

std::vector<std::pair<int, int>> canonicalize(std::vector<std::pair<int, int>> pairs) {
  for (auto& p : pairs) {
    if (p.first > p.second) std::swap(p.first, p.second);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

double max_pair_distance(const PointSet& ps, const std::vector<std::pair<int, int>>& pairs) {
  double m = 0.0;
  for (const auto& [a, b] : pairs) {
    m = std::max(m, distance(ps.points[a], ps.points[b]));
  }
  return m;
}

}  // namespace

NeighborRelation build_voronoi_relation(const TilingSystem& ts, double eps_len) {
  NeighborRelation rel;
  rel.ps = ts.ps;
  rel.kind = "voronoi";
  for (const auto& f : facet_adjacency(ts, eps_len)) {
    rel.pairs.emplace_back(f.a, f.b);
  }
  rel.pairs = canonicalize(std::move(rel.pairs));
  rel.S = max_pair_distance(*rel.ps, rel.pairs);
  return rel;
}

NeighborRelation build_max_relation(PointSetPtr ps, double R) {
  if (!ps) throw input_error("build_max_relation: null point set");
  NeighborRelation rel;
  rel.ps = ps;
  rel.kind = "max";
  rel.S = 2.0 * R;
  GridIndex index(ps->points, std::max(R, 1e-9));
  for (int i = 0; i < static_cast<int>(ps->size()); ++i) {
    for (int j : index.range_query(ps->points[i], 2.0 * R)) {
      if (j > i) rel.pairs.emplace_back(i, j);
    }
  }
  rel.pairs = canonicalize(std::move(rel.pairs));
  return rel;
}

NeighborRelation build_canonical_relation(const TilingSystem& ts) {
  NeighborRelation rel;
  rel.ps = ts.ps;
  rel.kind = "canonical";
  const double touch_tol = 1e-9 * std::max(1.0, 2.0 * ts.params.R);
  GridIndex index(ts.ps->points, std::max(ts.params.R, 1e-9));
  for (const auto& [id, cell] : ts.cells) {
    for (int j : index.range_query(ts.ps->points[id], 2.0 * ts.params.R)) {
      if (j <= id || !ts.has_cell(j)) continue;
      if (polygon_distance(cell, ts.cells.at(j)) <= touch_tol) {
        rel.pairs.emplace_back(id, j);
      }
    }
  }
  rel.pairs = canonicalize(std::move(rel.pairs));
  rel.S = max_pair_distance(*rel.ps, rel.pairs);
  return rel;
}

NeighborRelation ingest_relation(PointSetPtr ps, const std::vector<std::pair<int, int>>& pairs,
                                 double S) {
  if (!ps) throw input_error("ingest_relation: null point set");
  NeighborRelation rel;
  rel.ps = ps;
  rel.kind = "ingest";
  rel.S = S;
  const int n = static_cast<int>(ps->size());
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      std::ostringstream msg;
      msg << "ingest_relation: pair (" << a << "," << b << ") references unknown id";
      throw input_error(msg.str());
    }
    if (a == b) continue;  // diagonal implied
    rel.pairs.emplace_back(a, b);
  }
  rel.pairs = canonicalize(std::move(rel.pairs));
  for (const auto& [a, b] : rel.pairs) {
    const double d = distance(ps->points[a], ps->points[b]);
    if (d > S + 1e-12) {
      std::ostringstream msg;
      msg << "ingest_relation: (N1) violated, pair (" << a << "," << b << ") at distance " << d
          << " > S = " << S;
      throw input_error(msg.str());
    }
  }
  return rel;
}

AxiomReport validate_axioms(const NeighborRelation& rel, double margin, int n2_samples,
                            std::uint64_t seed) {
  AxiomReport rep;
  rep.margin = margin;
  rep.seed = seed;
  const PointSet& ps = *rel.ps;
  rep.flagged_empty = rel.pairs.empty();

  // (N0) symmetry is structural (unordered storage); (N1) exhaustive
  for (const auto& [a, b] : rel.pairs) {
    if (distance(ps.points[a], ps.points[b]) > rel.S + 1e-12) {
      rep.n1_pass = false;
      rep.n1_violations.emplace_back(a, b);
    }
  }

  // (N2): sampled interior pairs; search restricted to the tube [x,y] + B_S
  const auto interior = ps.interior_ids(margin);
  if (interior.empty()) throw input_error("validate_axioms: margin-shrunk window is empty");
  const auto adj = rel.adjacency();
  Rng rng(seed);
  const double tube_tol = 1e-9;
  for (int s = 0; s < n2_samples; ++s) {
    const int x = interior[rng.below(interior.size())];
    int y = x;
    while (y == x) y = interior[rng.below(interior.size())];
    ++rep.n2_samples;

    std::deque<int> queue;
    std::set<int> seen;
    queue.push_back(x);
    seen.insert(x);
    bool reached = false;
    while (!queue.empty() && !reached) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj[u]) {
        if (seen.count(v)) continue;
        if (segment_distance(ps.points[v], ps.points[x], ps.points[y]) > rel.S + tube_tol) continue;
        if (v == y) {
          reached = true;
          break;
        }
        seen.insert(v);
        queue.push_back(v);
      }
    }
    if (!reached) {
      ++rep.n2_failures;
      if (rep.n2_failed_pairs.size() < 32) rep.n2_failed_pairs.emplace_back(x, y);
    }
  }
  return rep;
}

DegreeStats degree_stats(const NeighborRelation& rel, const DeloneParams& params, double margin) {
  DegreeStats st;
  const PointSet& ps = *rel.ps;
  st.bound = std::pow((rel.S + params.r) / params.r, ps.dim);
  const auto adj = rel.adjacency();
  const auto interior = ps.interior_ids(margin);
  st.interior_count = static_cast<int>(interior.size());
  st.min_deg = std::numeric_limits<int>::max();
  for (int id : interior) {
    const int d = static_cast<int>(adj[id].size());
    st.min_deg = std::min(st.min_deg, d);
    st.max_deg = std::max(st.max_deg, d);
    ++st.histogram[d];
  }
  if (interior.empty()) st.min_deg = 0;
  st.bound_satisfied = st.max_deg <= st.bound;
  return st;
}

}  // namespace delone
