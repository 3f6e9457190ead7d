#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "delone/common.hpp"

namespace delone {

/// Axis-aligned box |x_i - center_i| <= half_width, the finite truncation of
/// an (infinite) point set.
struct Window {
  Vec center;
  double half_width = 0.0;

  int dim() const { return static_cast<int>(center.size()); }

  bool contains(const Vec& p, double shrink = 0.0) const {
    for (std::size_t i = 0; i < center.size(); ++i) {
      if (std::abs(p[i] - center[i]) > half_width - shrink) return false;
    }
    return true;
  }

  /// L-infinity distance from p to the window boundary (negative outside).
  double boundary_distance(const Vec& p) const {
    double m = half_width;
    for (std::size_t i = 0; i < center.size(); ++i) {
      m = std::min(m, half_width - std::abs(p[i] - center[i]));
    }
    return m;
  }
};

/// Packing radius r and covering radius R. The covering radius is estimated by
/// probing, so it carries the probe pitch as its resolution.
struct DeloneParams {
  double r = 0.0;
  double R = 0.0;
  double probe_pitch = 0.0;
};

struct PointSet {
  int dim = 0;
  std::vector<Vec> points;  // id == index
  Window window;
  std::string generator;  // provenance descriptor
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }

  /// Ids of points in the margin-shrunk window.
  std::vector<int> interior_ids(double margin) const;
};

using PointSetPtr = std::shared_ptr<const PointSet>;

enum class LatticeKind { square, triangular };

PointSet generate_lattice(LatticeKind kind, double spacing, const Window& window);

/// Lattice points displaced by independent uniform vectors of norm <= delta.
/// delta < spacing/2 keeps the result Delone.
PointSet generate_jittered_lattice(LatticeKind kind, double spacing, const Window& window,
                                   double delta, std::uint64_t seed);

/// Vertex set of a Penrose rhombus tiling patch from the de Bruijn pentagrid
/// dual construction (five grid families at angles 2*pi*k/5), clipped to the
/// axis-aligned square inscribed in the disc of patch_radius. Unit edges.
/// Non-generic offsets (three concurrent grid lines) are re-drawn from seed.
PointSet generate_penrose(double patch_radius, const std::array<double, 5>& offsets,
                          std::uint64_t seed);

/// r_hat = half the minimum pairwise distance over interior points (exact);
/// R_hat = max distance to the set over a probe grid of pitch <= r_hat/4 in
/// the margin-shrunk window (one-sided estimate, pitch reported).
DeloneParams estimate_delone_params(const PointSet& ps, double margin);

struct DeloneReport {
  std::vector<std::pair<int, int>> close_pairs;  // ||x-y|| < 2r
  std::vector<Vec> uncovered_probes;             // dist to set > R
  double probe_pitch = 0.0;
  double margin = 0.0;

  bool pass() const { return close_pairs.empty() && uncovered_probes.empty(); }
};

DeloneReport verify_delone(const PointSet& ps, const DeloneParams& params, double margin);

/// Known exact parameters for the generated lattices (per unit spacing).
DeloneParams lattice_params(LatticeKind kind, double spacing);

}  // namespace delone
