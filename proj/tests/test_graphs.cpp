#include <doctest.h>

#include <cmath>

#include "delone/graphs.hpp"

using namespace delone;

namespace {

struct Z2 {
  PointSetPtr ps;
  NeighborRelation rel;
  CombinatorialGraph g;
  MetricGraph m;

  explicit Z2(double hw) {
    ps = std::make_shared<PointSet>(
        generate_lattice(LatticeKind::square, 1.0, Window{{0.0, 0.0}, hw}));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < static_cast<int>(ps->size()); ++i) {
      for (int j = i + 1; j < static_cast<int>(ps->size()); ++j) {
        if (std::abs(distance(ps->points[i], ps->points[j]) - 1.0) < 1e-12) {
          pairs.emplace_back(i, j);
        }
      }
    }
    rel = ingest_relation(ps, pairs, 1.0);
    g = CombinatorialGraph::from_relation(rel);
    m = MetricGraph::from_relation(rel);
  }

  int id_of(double x, double y) const {
    for (int i = 0; i < static_cast<int>(ps->size()); ++i) {
      if (std::abs(ps->points[i][0] - x) < 1e-12 && std::abs(ps->points[i][1] - y) < 1e-12) {
        return i;
      }
    }
    throw std::runtime_error("no such lattice point");
  }
};

}  // namespace

TEST_SUITE("graphs") {

TEST_CASE("dc equals the L1 distance on the axis graph") {
  Z2 z(6.0);
  CHECK(dc(z.g, z.id_of(0, 0), z.id_of(3, 4)) == 7);
  CHECK(dc(z.g, z.id_of(0, 0), z.id_of(0, 0)) == 0);
  CHECK(dc(z.g, z.id_of(0, 0), z.id_of(1, 0)) == 1);
}

TEST_CASE("unreachable vertices report -1") {
  auto ps = std::make_shared<PointSet>(
      generate_lattice(LatticeKind::square, 1.0, Window{{0.0, 0.0}, 2.0}));
  const auto rel = ingest_relation(ps, {{0, 1}}, 1.5);
  const auto g = CombinatorialGraph::from_relation(rel);
  CHECK(dc(g, 0, 2) == -1);
}

TEST_CASE("dm on vertices of the axis graph equals dc") {
  Z2 z(5.0);
  const int a = z.id_of(0, 0);
  const int b = z.id_of(2, 3);
  const double d = dm(z.m, z.m.vertex_point(a), z.m.vertex_point(b));
  CHECK(d == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("same-edge offsets take the direct path") {
  Z2 z(4.0);
  const int a = z.id_of(0, 0);
  int e = -1;
  for (const auto& [v, eid] : z.m.adj[a]) {
    (void)v;
    e = eid;
    break;
  }
  REQUIRE(e >= 0);
  CHECK(dm(z.m, {e, 0.25}, {e, 0.75}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("metric and Euclidean distances satisfy the equivalence chain") {
  Z2 z(6.0);
  Rng rng(5);
  const auto interior = z.ps->interior_ids(1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const int x = interior[rng.below(interior.size())];
    int y = x;
    while (y == x) y = interior[rng.below(interior.size())];
    const double d = distance(z.ps->points[x], z.ps->points[y]);
    const double dmv = dm(z.m, z.m.vertex_point(x), z.m.vertex_point(y));
    const int hops = dc(z.g, x, y);
    CHECK(d <= dmv + 1e-12);
    CHECK(dmv <= z.rel.S * hops + 1e-12);
  }
}

TEST_CASE("triangle inequality for dm on random triples") {
  Z2 z(5.0);
  Rng rng(7);
  const auto interior = z.ps->interior_ids(1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const int a = interior[rng.below(interior.size())];
    const int b = interior[rng.below(interior.size())];
    const int c = interior[rng.below(interior.size())];
    const double ab = dm(z.m, z.m.vertex_point(a), z.m.vertex_point(b));
    const double bc = dm(z.m, z.m.vertex_point(b), z.m.vertex_point(c));
    const double ac = dm(z.m, z.m.vertex_point(a), z.m.vertex_point(c));
    CHECK(ac <= ab + bc + 1e-9);
  }
}

TEST_CASE("combinatorial ball counts on the axis graph") {
  Z2 z(8.0);
  const int c = z.id_of(0, 0);
  CHECK(ball_count_c(z.g, c, 0).value == 1.0);
  CHECK(ball_count_c(z.g, c, 2).value == 13.0);  // |{|i|+|j| <= 2}|
  double prev = 0;
  for (int s = 0; s <= 5; ++s) {
    const auto b = ball_count_c(z.g, c, s);
    CHECK(b.value >= prev);
    CHECK_FALSE(b.truncated);
    prev = b.value;
  }
  CHECK(ball_count_c(z.g, c, 9).truncated);
}

TEST_CASE("metric ball measure: star scaling and full shells") {
  Z2 z(8.0);
  const int c = z.id_of(0, 0);
  const auto a = z.m.vertex_point(c);
  CHECK(ball_measure_m(z.m, a, 0.3).value == doctest::Approx(4.0 * 0.3).epsilon(1e-12));
  CHECK(ball_measure_m(z.m, a, 1.0).value == doctest::Approx(4.0).epsilon(1e-12));
  // B_2 on the axis grid: 4 spokes of length 2 = 12 unit edges
  CHECK(ball_measure_m(z.m, a, 2.0).value == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(ball_measure_m(z.m, a, 5.0).value <= z.m.total_length);

  // continuity and monotonicity in s
  double prev = 0.0;
  for (double s = 0.1; s <= 3.0; s += 0.1) {
    const double v = ball_measure_m(z.m, a, s).value;
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("metric ball from an edge-interior point") {
  Z2 z(6.0);
  const int c = z.id_of(0, 0);
  int e = -1;
  for (const auto& [v, eid] : z.m.adj[c]) {
    (void)v;
    e = eid;
    break;
  }
  // small ball around the midpoint of an edge is a plain interval
  CHECK(ball_measure_m(z.m, {e, 0.5}, 0.2).value == doctest::Approx(0.4).epsilon(1e-12));
  // radius 0.5: reaches both endpoints exactly, still within the edge star
  CHECK(ball_measure_m(z.m, {e, 0.5}, 0.5).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("log-log slope of the metric ball growth fits the dimension") {
  Z2 z(14.0);
  const auto a = z.m.vertex_point(z.id_of(0, 0));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double s = 2.0; s <= 10.0; s += 1.0) {
    const auto b = ball_measure_m(z.m, a, s);
    REQUIRE_FALSE(b.truncated);
    const double X = std::log(s), Y = std::log(b.value);
    sx += X;
    sy += Y;
    sxx += X * X;
    sxy += X * Y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope > 2.0 - 0.2);
  CHECK(slope < 2.0 + 0.2);
}

TEST_CASE("equivalence constants on the axis graph") {
  Z2 z(8.0);
  const auto params = lattice_params(LatticeKind::square, 1.0);
  // C = (2(S+r) + pi (S+r)^2 / (2r)) / (pi r^2) at S = 1, r = 1/2
  const double expect_C = (2.0 * 1.5 + M_PI * 1.5 * 1.5 / 1.0) / (M_PI * 0.25);
  CHECK(equivalence_constant(2, 0.5, 1.0) == doctest::Approx(expect_C).epsilon(1e-12));
  CHECK(expect_C == doctest::Approx(12.82).epsilon(1e-3));

  const auto rep = equivalence_constants(z.rel, params, 1.0, 400, 99);
  CHECK(rep.bounds_hold);
  CHECK(rep.C == doctest::Approx(expect_C));
  CHECK(rep.max_dm_over_d >= 1.0);
  // the maximal dc/d ratio on Z^2 is attained on diagonal pairs
  CHECK(rep.max_dc_over_d == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(rep.max_dc_over_d <= rep.C);
}

}  // TEST_SUITE
