#include "delone/grid_index.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace delone {

GridIndex::GridIndex(const std::vector<Vec>& points, double cell_size)
    : points_(&points), cell_(cell_size) {
  if (cell_size <= 0) throw input_error("GridIndex: cell size must be positive");
  dim_ = points.empty() ? 0 : static_cast<int>(points.front().size());
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    cells_[cell_of(points[i])].push_back(i);
  }
}

std::vector<long> GridIndex::cell_of(const Vec& p) const {
  std::vector<long> key(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    key[i] = static_cast<long>(std::floor(p[i] / cell_));
  }
  return key;
}

void GridIndex::scan_box(const std::vector<long>& lo, const std::vector<long>& hi,
                         const std::function<void(int)>& visit) const {
  std::vector<long> cur = lo;
  while (true) {
    auto it = cells_.find(cur);
    if (it != cells_.end()) {
      for (int id : it->second) visit(id);
    }
    int d = 0;
    while (d < dim_) {
      if (++cur[d] <= hi[d]) break;
      cur[d] = lo[d];
      ++d;
    }
    if (d == dim_) break;
  }
}

std::vector<int> GridIndex::range_query(const Vec& center, double radius) const {
  std::vector<int> out;
  if (points_->empty()) return out;
  std::vector<long> lo(dim_), hi(dim_);
  for (int i = 0; i < dim_; ++i) {
    lo[i] = static_cast<long>(std::floor((center[i] - radius) / cell_));
    hi[i] = static_cast<long>(std::floor((center[i] + radius) / cell_));
  }
  const double r2 = radius * radius;
  scan_box(lo, hi, [&](int id) {
    if (squared_distance((*points_)[id], center) <= r2) out.push_back(id);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<int, double> GridIndex::nearest(const Vec& q, int exclude) const {
  if (points_->empty()) return {-1, std::numeric_limits<double>::infinity()};
  int best = -1;
  double best2 = std::numeric_limits<double>::infinity();
  // grow the scanned box ring by ring until the best candidate is certified
  for (long ring = 1;; ++ring) {
    std::vector<long> lo(dim_), hi(dim_);
    for (int i = 0; i < dim_; ++i) {
      lo[i] = static_cast<long>(std::floor(q[i] / cell_)) - ring;
      hi[i] = static_cast<long>(std::floor(q[i] / cell_)) + ring;
    }
    scan_box(lo, hi, [&](int id) {
      if (id == exclude) return;
      const double d2 = squared_distance((*points_)[id], q);
      if (d2 < best2) {
        best2 = d2;
        best = id;
      }
    });
    // any point outside the scanned box is at least (ring-1)*cell away
    if (best >= 0 && std::sqrt(best2) <= (ring - 1) * cell_) break;
    if (ring > 1000000) throw numerical_error("GridIndex::nearest: search did not terminate");
  }
  return {best, std::sqrt(best2)};
}

GridIndex::ClosestPair GridIndex::min_pairwise(const std::vector<int>& subset) const {
  ClosestPair out;
  for (int i : subset) {
    auto [j, d] = nearest((*points_)[i], i);
    if (j >= 0 && d < out.dist) {
      out.a = i;
      out.b = j;
      out.dist = d;
    }
  }
  return out;
}

}  // namespace delone
