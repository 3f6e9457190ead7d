#include <doctest.h>

#include <algorithm>
#include <set>

#include "delone/neighbors.hpp"

using namespace delone;

namespace {

PointSetPtr square(double hw) {
  return std::make_shared<PointSet>(
      generate_lattice(LatticeKind::square, 1.0, Window{{0.0, 0.0}, hw}));
}

std::set<std::pair<int, int>> pair_set(const NeighborRelation& rel) {
  return {rel.pairs.begin(), rel.pairs.end()};
}

// axis edge list of the square lattice built straight from coordinates
std::vector<std::pair<int, int>> axis_pairs(const PointSet& ps) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(ps.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(ps.size()); ++j) {
      if (std::abs(distance(ps.points[i], ps.points[j]) - 1.0) < 1e-12) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("neighbors") {

TEST_CASE("voronoi relation on the square lattice: degree 4, S = 1") {
  auto ps = square(6.0);
  const auto ts = voronoi_cells_2d(ps, lattice_params(LatticeKind::square, 1.0), 2.0);
  const auto rel = build_voronoi_relation(ts);
  CHECK(rel.S == doctest::Approx(1.0));
  const auto stats = degree_stats(rel, lattice_params(LatticeKind::square, 1.0), 3.0);
  CHECK(stats.min_deg == 4);
  CHECK(stats.max_deg == 4);
  CHECK(stats.bound == doctest::Approx(9.0));  // ((1+0.5)/0.5)^2
  CHECK(stats.bound_satisfied);
}

TEST_CASE("max relation on the square lattice: degree 8, bound ~14.66") {
  auto ps = square(6.0);
  const double R = std::sqrt(2.0) / 2.0;
  const auto rel = build_max_relation(ps, R);
  CHECK(rel.S == doctest::Approx(std::sqrt(2.0)));
  const auto stats = degree_stats(rel, lattice_params(LatticeKind::square, 1.0), 2.0);
  CHECK(stats.min_deg == 8);
  CHECK(stats.max_deg == 8);
  CHECK(stats.bound == doctest::Approx(std::pow((std::sqrt(2.0) + 0.5) / 0.5, 2.0)));
  CHECK(stats.bound_satisfied);
}

TEST_CASE("all pair distances sit in [2r, S]") {
  auto ps = std::make_shared<PointSet>(
      generate_jittered_lattice(LatticeKind::square, 1.0, Window{{0.0, 0.0}, 7.0}, 0.2, 3));
  const auto params = estimate_delone_params(*ps, 1.0);
  const auto rel = build_max_relation(ps, params.R);
  REQUIRE(!rel.pairs.empty());
  for (const auto& [a, b] : rel.pairs) {
    const double d = distance(ps->points[a], ps->points[b]);
    CHECK(d >= 2.0 * params.r - 1e-12);
    CHECK(d <= rel.S + 1e-12);
  }
}

TEST_CASE("canonical relation includes corner contacts on the square lattice") {
  auto ps = square(6.0);
  const auto ts = voronoi_cells_2d(ps, lattice_params(LatticeKind::square, 1.0), 2.0);
  const auto can = build_canonical_relation(ts);
  const auto vor = build_voronoi_relation(ts);

  const auto adj = can.adjacency();
  for (int id : ps->interior_ids(4.0)) {
    CHECK(adj[id].size() == 8);  // axis plus corner contacts
  }

  // subset chain: voronoi within canonical within max
  const auto can_set = pair_set(can);
  for (const auto& p : vor.pairs) CHECK(can_set.count(p) == 1);

  const auto maxrel = build_max_relation(ps, std::sqrt(2.0) / 2.0);
  const auto max_set = pair_set(maxrel);
  for (const auto& p : can.pairs) CHECK(max_set.count(p) == 1);
}

TEST_CASE("canonical relation on the triangular lattice stays at degree 6") {
  auto ps = std::make_shared<PointSet>(
      generate_lattice(LatticeKind::triangular, 1.0, Window{{0.0, 0.0}, 7.0}));
  const auto ts = voronoi_cells_2d(ps, lattice_params(LatticeKind::triangular, 1.0), 1.5);
  const auto can = build_canonical_relation(ts);
  const auto adj = can.adjacency();
  for (int id : ps->interior_ids(4.0)) CHECK(adj[id].size() == 6);
}

TEST_CASE("ingest: valid axis list, (N1) rejection, unknown ids") {
  auto ps = square(4.0);
  const auto pairs = axis_pairs(*ps);
  const auto rel = ingest_relation(ps, pairs, 1.0);
  const auto stats = degree_stats(rel, lattice_params(LatticeKind::square, 1.0), 2.0);
  CHECK(stats.max_deg == 4);

  auto bad = pairs;
  // a diagonal pair at distance sqrt(2) > S = 1
  const auto ids = ps->interior_ids(2.0);
  int a = -1, b = -1;
  for (int i : ids) {
    for (int j : ids) {
      if (std::abs(distance(ps->points[i], ps->points[j]) - std::sqrt(2.0)) < 1e-12) {
        a = i;
        b = j;
      }
    }
  }
  REQUIRE(a >= 0);
  bad.emplace_back(a, b);
  CHECK_THROWS_AS(ingest_relation(ps, bad, 1.0), input_error);

  CHECK_THROWS_AS(ingest_relation(ps, {{0, 100000}}, 1.0), input_error);
}

TEST_CASE("empty relation is flagged and fails (N2)") {
  auto ps = square(4.0);
  const auto rel = ingest_relation(ps, {}, 1.0);
  const auto rep = validate_axioms(rel, 1.0, 10, 1);
  CHECK(rep.flagged_empty);
  CHECK_FALSE(rep.pass());
  CHECK(rep.n2_failures == rep.n2_samples);
}

TEST_CASE("axioms pass on the voronoi relation of the square lattice") {
  auto ps = square(8.0);
  const auto ts = voronoi_cells_2d(ps, lattice_params(LatticeKind::square, 1.0), 2.0);
  const auto rel = build_voronoi_relation(ts);
  const auto rep = validate_axioms(rel, 3.5, 200, 17);
  CHECK(rep.pass());
  CHECK(rep.n2_samples == 200);
  CHECK(rep.n2_failures == 0);
}

TEST_CASE("deleting vertical edges breaks (N2)") {
  auto ps = square(6.0);
  std::vector<std::pair<int, int>> horizontal;
  for (const auto& [a, b] : axis_pairs(*ps)) {
    if (std::abs(ps->points[a][1] - ps->points[b][1]) < 1e-12) horizontal.emplace_back(a, b);
  }
  const auto rel = ingest_relation(ps, horizontal, 1.0);
  const auto rep = validate_axioms(rel, 1.5, 100, 11);
  CHECK_FALSE(rep.pass());
  CHECK(rep.n2_failures > 0);
}

TEST_CASE("max relation passes the axiom suite on a jittered set") {
  auto ps = std::make_shared<PointSet>(
      generate_jittered_lattice(LatticeKind::square, 1.0, Window{{0.0, 0.0}, 8.0}, 0.2, 23));
  const auto params = estimate_delone_params(*ps, 1.0);
  const auto rel = build_max_relation(ps, params.R);
  const auto rep = validate_axioms(rel, 2.5, 200, 29);
  CHECK(rep.pass());
}

TEST_CASE("(N2) success is monotone in S") {
  // enlarging the declared S of the same edge set cannot break the search
  auto ps = square(6.0);
  const auto pairs = axis_pairs(*ps);
  const auto rel_small = ingest_relation(ps, pairs, 1.0);
  auto rel_large = rel_small;
  rel_large.S = 2.0;
  const auto rep_small = validate_axioms(rel_small, 2.5, 150, 31);
  const auto rep_large = validate_axioms(rel_large, 2.5, 150, 31);
  CHECK(rep_small.n2_failures >= rep_large.n2_failures);
  CHECK(rep_small.pass());
  CHECK(rep_large.pass());
}

}  // TEST_SUITE
