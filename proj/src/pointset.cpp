#include "delone/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "delone/grid_index.hpp"

namespace delone {

namespace {

constexpr double kIdentityTol = 1e-12;  // relative to the spacing scale

void check_window(const Window& w) {
  if (w.center.empty()) throw input_error("window: empty center");
  if (!(w.half_width > 0)) throw input_error("window: half_width must be positive");
  for (double c : w.center) {
    if (!std::isfinite(c)) throw input_error("window: non-finite center");
  }
}

}  // namespace

std::vector<int> PointSet::interior_ids(double margin) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    if (window.contains(points[i], margin)) out.push_back(i);
  }
  return out;
}

DeloneParams lattice_params(LatticeKind kind, double spacing) {
  DeloneParams p;
  p.r = spacing / 2.0;
  p.R = kind == LatticeKind::square ? spacing * std::sqrt(2.0) / 2.0
                                    : spacing / std::sqrt(3.0);
  return p;
}

PointSet generate_lattice(LatticeKind kind, double spacing, const Window& window) {
  check_window(window);
  if (!(spacing > 0)) throw input_error("generate_lattice: spacing must be positive");
  const int dim = window.dim();
  if (kind == LatticeKind::triangular && dim != 2) {
    throw input_error("generate_lattice: triangular lattice requires dim 2");
  }

  PointSet ps;
  ps.dim = dim;
  ps.window = window;
  {
    std::ostringstream g;
    g << (kind == LatticeKind::square ? "square" : "triangular") << "-lattice spacing="
      << spacing;
    ps.generator = g.str();
  }

  if (kind == LatticeKind::square) {
    // hypercubic lattice: spacing * Z^N intersected with the window
    std::vector<long> lo(dim), hi(dim), cur(dim);
    for (int i = 0; i < dim; ++i) {
      lo[i] = static_cast<long>(std::ceil((window.center[i] - window.half_width) / spacing - 1e-12));
      hi[i] = static_cast<long>(std::floor((window.center[i] + window.half_width) / spacing + 1e-12));
      if (lo[i] > hi[i]) throw input_error("generate_lattice: empty window");
      cur[i] = lo[i];
    }
    while (true) {
      Vec p(dim);
      for (int i = 0; i < dim; ++i) p[i] = cur[i] * spacing;
      ps.points.push_back(std::move(p));
      int d = dim - 1;  // row-major order, deterministic
      while (d >= 0) {
        if (++cur[d] <= hi[d]) break;
        cur[d] = lo[d];
        --d;
      }
      if (d < 0) break;
    }
  } else {
    // basis (s,0), (s/2, s*sqrt(3)/2)
    const double row_h = spacing * std::sqrt(3.0) / 2.0;
    const double ylo = window.center[1] - window.half_width;
    const double yhi = window.center[1] + window.half_width;
    const double xlo = window.center[0] - window.half_width;
    const double xhi = window.center[0] + window.half_width;
    const long jlo = static_cast<long>(std::ceil(ylo / row_h - 1e-12));
    const long jhi = static_cast<long>(std::floor(yhi / row_h + 1e-12));
    for (long j = jlo; j <= jhi; ++j) {
      const double y = j * row_h;
      const double shift = (j % 2 != 0) ? spacing / 2.0 : 0.0;
      const long ilo = static_cast<long>(std::ceil((xlo - shift) / spacing - 1e-12));
      const long ihi = static_cast<long>(std::floor((xhi - shift) / spacing + 1e-12));
      for (long i = ilo; i <= ihi; ++i) {
        ps.points.push_back({i * spacing + shift, y});
      }
    }
  }
  if (ps.points.size() < 2) throw input_error("generate_lattice: empty window");
  return ps;
}

PointSet generate_jittered_lattice(LatticeKind kind, double spacing, const Window& window,
                                   double delta, std::uint64_t seed) {
  if (delta < 0) throw input_error("generate_jittered_lattice: delta must be nonnegative");
  if (delta >= spacing / 2.0) {
    throw input_error("generate_jittered_lattice: delta >= spacing/2, Delone property not guaranteed");
  }
  PointSet ps = generate_lattice(kind, spacing, window);
  const int dim = ps.dim;
  Rng rng(seed);
  for (auto& p : ps.points) {
    // uniform vector in the delta-ball, by rejection from the cube
    Vec v(dim);
    if (delta > 0) {
      while (true) {
        double n2 = 0;
        for (int i = 0; i < dim; ++i) {
          v[i] = rng.uniform(-delta, delta);
          n2 += v[i] * v[i];
        }
        if (n2 <= delta * delta) break;
      }
      for (int i = 0; i < dim; ++i) p[i] += v[i];
    }
  }
  // displaced points may leave the window; clamp is wrong, drop instead
  std::vector<Vec> kept;
  for (auto& p : ps.points) {
    if (ps.window.contains(p)) kept.push_back(std::move(p));
  }
  ps.points = std::move(kept);
  std::ostringstream g;
  g << "jittered-" << ps.generator << " delta=" << delta;
  ps.generator = g.str();
  ps.seed = seed;
  return ps;
}

namespace {

struct PentagridVertexSetResult {
  bool generic = true;
  std::map<std::array<long, 5>, std::array<double, 2>> vertices;
};

PentagridVertexSetResult pentagrid_vertices(double grid_radius, const std::array<double, 5>& gamma) {
  PentagridVertexSetResult out;
  std::array<std::array<double, 2>, 5> n;
  for (int k = 0; k < 5; ++k) {
    n[k] = {std::cos(2.0 * M_PI * k / 5.0), std::sin(2.0 * M_PI * k / 5.0)};
  }
  const long mrange = static_cast<long>(std::ceil(grid_radius)) + 1;
  const double near_integer_tol = 1e-7;
  for (int j = 0; j < 5; ++j) {
    for (int k = j + 1; k < 5; ++k) {
      const double det = n[j][0] * n[k][1] - n[j][1] * n[k][0];
      for (long mj = -mrange; mj <= mrange; ++mj) {
        for (long mk = -mrange; mk <= mrange; ++mk) {
          // intersection of z.n_j = mj + gamma_j with z.n_k = mk + gamma_k
          const double cj = mj + gamma[j];
          const double ck = mk + gamma[k];
          const double zx = (cj * n[k][1] - ck * n[j][1]) / det;
          const double zy = (ck * n[j][0] - cj * n[k][0]) / det;
          if (zx * zx + zy * zy > grid_radius * grid_radius) continue;
          std::array<long, 5> K{};
          for (int i = 0; i < 5; ++i) {
            if (i == j) {
              K[i] = mj;
              continue;
            }
            if (i == k) {
              K[i] = mk;
              continue;
            }
            const double x = zx * n[i][0] + zy * n[i][1] - gamma[i];
            if (std::abs(x - std::round(x)) < near_integer_tol) {
              out.generic = false;
              return out;
            }
            K[i] = static_cast<long>(std::ceil(x));
          }
          for (int a = 0; a <= 1; ++a) {
            for (int b = 0; b <= 1; ++b) {
              std::array<long, 5> Kv = K;
              Kv[j] = mj + a;
              Kv[k] = mk + b;
              auto it = out.vertices.find(Kv);
              if (it == out.vertices.end()) {
                std::array<double, 2> v = {0.0, 0.0};
                for (int i = 0; i < 5; ++i) {
                  v[0] += Kv[i] * n[i][0];
                  v[1] += Kv[i] * n[i][1];
                }
                out.vertices.emplace(Kv, v);
              }
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

PointSet generate_penrose(double patch_radius, const std::array<double, 5>& offsets,
                          std::uint64_t seed) {
  if (!(patch_radius > 0)) throw input_error("generate_penrose: patch_radius must be positive");
  std::array<double, 5> gamma = offsets;
  Rng rng(seed);
  // the index map z -> sum K_i(z) n_i scales distances by 5/2 plus a bounded
  // displacement, so a grid disc of (rho + 6)/2.5 covers the tiling disc rho
  const double grid_radius = (patch_radius + 6.0) / 2.5;
  PentagridVertexSetResult res;
  int attempts = 0;
  const int max_attempts = 32;
  while (true) {
    res = pentagrid_vertices(grid_radius, gamma);
    if (res.generic) break;
    if (++attempts >= max_attempts) {
      throw numerical_error("generate_penrose: no generic pentagrid offsets after redraws");
    }
    for (auto& g : gamma) g = rng.uniform(0.01, 0.99);
  }

  PointSet ps;
  ps.dim = 2;
  ps.window.center = {0.0, 0.0};
  ps.window.half_width = patch_radius / std::sqrt(2.0);
  ps.seed = seed;
  {
    std::ostringstream g;
    g << "penrose patch_radius=" << patch_radius << " offsets=[";
    for (int i = 0; i < 5; ++i) g << (i ? "," : "") << gamma[i];
    g << "]";
    ps.generator = g.str();
  }
  for (const auto& [key, v] : res.vertices) {
    Vec p = {v[0], v[1]};
    if (ps.window.contains(p)) ps.points.push_back(std::move(p));
  }
  if (ps.points.size() < 2) throw input_error("generate_penrose: patch too small");
  return ps;
}

DeloneParams estimate_delone_params(const PointSet& ps, double margin) {
  if (ps.size() < 2) throw input_error("estimate_delone_params: need at least 2 points");
  if (!(margin >= 0) || margin >= ps.window.half_width) {
    throw input_error("estimate_delone_params: margin must be in [0, half_width)");
  }
  const std::vector<int> interior = ps.interior_ids(margin);
  if (interior.size() < 2) throw input_error("estimate_delone_params: fewer than 2 interior points");

  // cell size heuristic: points per cell stays O(1) for Delone inputs
  const double extent = 2.0 * ps.window.half_width;
  const double guess = extent / std::max(2.0, std::pow(static_cast<double>(ps.size()), 1.0 / ps.dim));
  GridIndex index(ps.points, guess);

  const auto closest = index.min_pairwise(interior);
  if (closest.a < 0) throw input_error("estimate_delone_params: no pairs");
  const double scale = std::max(1.0, ps.window.half_width);
  if (closest.dist < kIdentityTol * scale) {
    throw input_error("estimate_delone_params: not uniformly discrete (duplicate points)");
  }

  DeloneParams out;
  out.r = closest.dist / 2.0;

  // covering radius by dense probing of the margin-shrunk window; the pitch
  // is snapped down so the grid hits both window edges exactly
  const double probe_extent = 2.0 * (ps.window.half_width - margin);
  const long steps = static_cast<long>(std::ceil(probe_extent / (out.r / 4.0))) + 1;
  out.probe_pitch = probe_extent / (steps - 1);
  const double lo = -(ps.window.half_width - margin);
  double worst = 0.0;
  std::vector<long> cur(ps.dim, 0);
  while (true) {
    Vec q(ps.dim);
    for (int i = 0; i < ps.dim; ++i) q[i] = ps.window.center[i] + lo + cur[i] * out.probe_pitch;
    worst = std::max(worst, index.nearest(q).second);
    int d = ps.dim - 1;
    while (d >= 0) {
      if (++cur[d] < steps) break;
      cur[d] = 0;
      --d;
    }
    if (d < 0) break;
  }
  out.R = worst;
  return out;
}

DeloneReport verify_delone(const PointSet& ps, const DeloneParams& params, double margin) {
  DeloneReport rep;
  rep.margin = margin;
  rep.probe_pitch = params.probe_pitch > 0 ? params.probe_pitch : params.r / 4.0;
  if (ps.size() < 2) throw input_error("verify_delone: need at least 2 points");

  const double extent = 2.0 * ps.window.half_width;
  const double guess = extent / std::max(2.0, std::pow(static_cast<double>(ps.size()), 1.0 / ps.dim));
  GridIndex index(ps.points, guess);

  // uniform discreteness: pairs with an interior endpoint closer than 2r
  const auto interior = ps.interior_ids(margin);
  for (int i : interior) {
    for (int j : index.range_query(ps.points[i], 2.0 * params.r)) {
      if (j == i) continue;
      const double d = distance(ps.points[i], ps.points[j]);
      if (d < 2.0 * params.r - 1e-12) {
        if (j > i || !ps.window.contains(ps.points[j], margin)) {
          rep.close_pairs.emplace_back(i, j);
        }
      }
    }
  }

  // relative density: probe grid points farther than R from the set
  const double probe_extent = 2.0 * (ps.window.half_width - margin);
  const long steps = static_cast<long>(std::ceil(probe_extent / rep.probe_pitch)) + 1;
  const double pitch = probe_extent / (steps - 1);
  rep.probe_pitch = pitch;
  const double lo = -(ps.window.half_width - margin);
  std::vector<long> cur(ps.dim, 0);
  while (true) {
    Vec q(ps.dim);
    for (int i = 0; i < ps.dim; ++i) q[i] = ps.window.center[i] + lo + cur[i] * pitch;
    if (index.nearest(q).second > params.R + 1e-12) rep.uncovered_probes.push_back(q);
    int d = ps.dim - 1;
    while (d >= 0) {
      if (++cur[d] < steps) break;
      cur[d] = 0;
      --d;
    }
    if (d < 0) break;
  }
  return rep;
}

}  // namespace delone
