#pragma once

#include <functional>
#include <limits>
#include <unordered_map>
#include <vector>

#include "delone/common.hpp"

namespace delone {

// Uniform spatial hash over N-dimensional points. Cells are cubes of a fixed
// edge; queries scan the cell neighborhood they can prove sufficient.
class GridIndex {
 public:
  GridIndex(const std::vector<Vec>& points, double cell_size);

  /// Ids of all points with ||p - center|| <= radius.
  std::vector<int> range_query(const Vec& center, double radius) const;

  /// Nearest point to q (optionally excluding one id). Returns {id, distance};
  /// id == -1 when the index is empty.
  std::pair<int, double> nearest(const Vec& q, int exclude = -1) const;

  /// Exact minimum over pairs {i, j} where i runs over `subset` and j over all
  /// points. Returns {i, j, distance}; i == -1 when no pair exists.
  struct ClosestPair {
    int a = -1, b = -1;
    double dist = std::numeric_limits<double>::infinity();
  };
  ClosestPair min_pairwise(const std::vector<int>& subset) const;

  double cell_size() const { return cell_; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<long>& k) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (long x : k) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

  std::vector<long> cell_of(const Vec& p) const;
  void scan_box(const std::vector<long>& lo, const std::vector<long>& hi,
                const std::function<void(int)>& visit) const;

  const std::vector<Vec>* points_;
  double cell_;
  int dim_;
  std::unordered_map<std::vector<long>, std::vector<int>, KeyHash> cells_;
};

}  // namespace delone
