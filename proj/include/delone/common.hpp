#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace delone {

/// Bad arguments or malformed input files. The CLI maps this to exit code 2.
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Solver breakdown or unmet tolerance. The CLI maps this to exit code 3.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Vec = std::vector<double>;

inline double squared_distance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double distance(const Vec& a, const Vec& b) {
  return std::sqrt(squared_distance(a, b));
}

// Distance from p to the closed segment [a,b].
inline double segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  const std::size_t n = p.size();
  double ab2 = 0.0, ap_ab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = b[i] - a[i];
    ab2 += d * d;
    ap_ab += (p[i] - a[i]) * d;
  }
  double t = ab2 > 0.0 ? ap_ab / ab2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = p[i] - (a[i] + t * (b[i] - a[i]));
    s += d * d;
  }
  return std::sqrt(s);
}

// Deterministic uniform doubles from a seeded engine. The standard
// distributions are implementation-defined, so values frozen in tests would
// not be portable; this mapping is exact everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    // rejection to avoid modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Volume of the k-dimensional Euclidean ball of radius rho.
inline double ball_volume(int k, double rho) {
  if (k == 0) return 1.0;
  return std::pow(M_PI, k / 2.0) / std::tgamma(k / 2.0 + 1.0) * std::pow(rho, k);
}

}  // namespace delone
