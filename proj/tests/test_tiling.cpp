#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "delone/tiling.hpp"

using namespace delone;

namespace {

PointSetPtr square(double hw) {
  return std::make_shared<PointSet>(
      generate_lattice(LatticeKind::square, 1.0, Window{{0.0, 0.0}, hw}));
}

PointSetPtr triangular(double hw) {
  return std::make_shared<PointSet>(
      generate_lattice(LatticeKind::triangular, 1.0, Window{{0.0, 0.0}, hw}));
}

}  // namespace

TEST_SUITE("tiling") {

TEST_CASE("square lattice cells are unit squares") {
  auto ps = square(6.0);
  const auto ts = voronoi_cells_2d(ps, lattice_params(LatticeKind::square, 1.0), 2.0);
  REQUIRE(!ts.cells.empty());
  for (const auto& [id, cell] : ts.cells) {
    CHECK(cell.area() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cell.v.size() == 4);
    const auto& x = ps->points[id];
    CHECK(cell.inradius_about({x[0], x[1]}) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("triangular lattice cells are hexagons of area sqrt(3)/2") {
  auto ps = triangular(7.0);
  const auto ts = voronoi_cells_2d(ps, lattice_params(LatticeKind::triangular, 1.0), 1.5);
  REQUIRE(!ts.cells.empty());
  for (const auto& [id, cell] : ts.cells) {
    CHECK(cell.area() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-9));
    CHECK(cell.v.size() == 6);
  }
}

TEST_CASE("cells sandwich between the packing and covering balls") {
  auto ps = std::make_shared<PointSet>(
      generate_jittered_lattice(LatticeKind::square, 1.0, Window{{0.0, 0.0}, 8.0}, 0.2, 5));
  const auto params = estimate_delone_params(*ps, 1.0);
  const auto ts = voronoi_cells_2d(ps, params, 2.0 * params.R + 0.05);
  REQUIRE(ts.cells.size() > 50);
  for (const auto& [id, cell] : ts.cells) {
    const auto& x = ps->points[id];
    CHECK(cell.inradius_about({x[0], x[1]}) >= params.r - 1e-9);
    CHECK(cell.max_vertex_distance({x[0], x[1]}) <= params.R + 1e-9);
  }
}

TEST_CASE("margin below 2R is rejected; dim 1 unsupported") {
  auto ps = square(5.0);
  CHECK_THROWS_AS(voronoi_cells_2d(ps, lattice_params(LatticeKind::square, 1.0), 1.0),
                  input_error);
  auto ps1 = std::make_shared<PointSet>();
  ps1->dim = 1;
  ps1->points = {{0.0}, {1.0}};
  ps1->window = Window{{0.0}, 2.0};
  CHECK_THROWS_AS(voronoi_cells_2d(ps1, DeloneParams{0.5, 0.5}, 1.5), input_error);
}

TEST_CASE("facet adjacency of the square lattice is the axis relation") {
  auto ps = square(5.0);
  const auto ts = voronoi_cells_2d(ps, lattice_params(LatticeKind::square, 1.0), 2.0);
  const auto facets = facet_adjacency(ts, 1e-9);
  std::map<int, int> deg;
  for (const auto& f : facets) {
    CHECK(f.shared_len == doctest::Approx(1.0).epsilon(1e-9));
    const auto& a = ps->points[f.a];
    const auto& b = ps->points[f.b];
    CHECK(distance(a, b) == doctest::Approx(1.0).epsilon(1e-12));  // no diagonals
    deg[f.a]++;
    deg[f.b]++;
  }
  // interior of the cell region: all four axis neighbors have cells
  for (const auto& [id, cell] : ts.cells) {
    if (ps->window.contains(ps->points[id], 3.0)) CHECK(deg[id] == 4);
  }
}

TEST_CASE("triangular lattice has six facet neighbors") {
  auto ps = triangular(7.0);
  const auto ts = voronoi_cells_2d(ps, lattice_params(LatticeKind::triangular, 1.0), 1.5);
  const auto facets = facet_adjacency(ts, 1e-9);
  std::map<int, int> deg;
  for (const auto& f : facets) {
    deg[f.a]++;
    deg[f.b]++;
  }
  for (const auto& [id, cell] : ts.cells) {
    if (ps->window.contains(ps->points[id], 3.0)) CHECK(deg[id] == 6);
  }
}

TEST_CASE("eps_len larger than all shared edges empties the relation") {
  auto ps = square(4.0);
  const auto ts = voronoi_cells_2d(ps, lattice_params(LatticeKind::square, 1.0), 2.0);
  CHECK(facet_adjacency(ts, 1.1).empty());
}

TEST_CASE("cell volume: interior only, areas tile the window") {
  auto ps = square(6.0);
  const auto ts = voronoi_cells_2d(ps, lattice_params(LatticeKind::square, 1.0), 2.0);
  CHECK(cell_volume(ts, ts.cells.begin()->first) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cell_volume(ts, -1), input_error);

  // unit cells tile: the areas of any k cells sum to k
  double sum = 0.0;
  int count = 0;
  for (const auto& [id, cell] : ts.cells) {
    if (ps->window.contains(ps->points[id], 1.5)) {
      sum += cell.area();
      ++count;
    }
  }
  CHECK(sum == doctest::Approx(static_cast<double>(count)).epsilon(1e-9));
}

TEST_CASE("clipping is order independent") {
  // the same cell computed with shuffled half-plane order has equal vertices
  auto ps = std::make_shared<PointSet>(
      generate_jittered_lattice(LatticeKind::square, 1.0, Window{{0.0, 0.0}, 5.0}, 0.25, 9));
  const auto params = estimate_delone_params(*ps, 1.0);
  const auto ts = voronoi_cells_2d(ps, params, 2.0 * params.R + 0.05);

  const int id = ps->interior_ids(2.5).front();
  const auto& x = ps->points[id];
  std::vector<int> nbrs;
  for (std::size_t j = 0; j < ps->size(); ++j) {
    if (static_cast<int>(j) != id && distance(ps->points[j], x) <= 2.0 * params.R) {
      nbrs.push_back(static_cast<int>(j));
    }
  }
  std::mt19937 rng(1);
  for (int rep = 0; rep < 5; ++rep) {
    std::shuffle(nbrs.begin(), nbrs.end(), rng);
    ConvexPolygon cell = make_box({x[0], x[1]}, 2.0 * params.R);
    for (int j : nbrs) {
      const auto& y = ps->points[j];
      const Pt2 n = {y[0] - x[0], y[1] - x[1]};
      const double c = 0.5 * (n[0] * (x[0] + y[0]) + n[1] * (x[1] + y[1]));
      cell = clip_halfplane(cell, n, c, j, 1e-12);
    }
    const auto& ref = ts.cells.at(id);
    CHECK(cell.area() == doctest::Approx(ref.area()).epsilon(1e-10));
    REQUIRE(cell.v.size() == ref.v.size());
    // same vertex set up to rotation
    for (const auto& v : cell.v) {
      bool found = false;
      for (const auto& w : ref.v) {
        if (std::hypot(v[0] - w[0], v[1] - w[1]) < 1e-9) found = true;
      }
      CHECK(found);
    }
  }
}

}  // TEST_SUITE
