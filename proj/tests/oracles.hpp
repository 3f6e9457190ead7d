#pragma once

// Independent reference computations used as test oracles. Everything here is
// deliberately implemented from scratch, without touching the library paths it
// checks.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracles {

// Modified Bessel function of integer order by its power series
// I_k(z) = sum_j (z/2)^{2j+k} / (j! (j+k)!).
inline double bessel_i(int k, double z) {
  k = std::abs(k);
  double term = std::pow(z / 2.0, k);
  for (int j = 1; j <= k; ++j) term /= j;  // (z/2)^k / k!
  double sum = term;
  for (int j = 1; j < 500; ++j) {
    term *= (z / 2.0) * (z / 2.0) / (static_cast<double>(j) * (j + k));
    sum += term;
    if (term < 1e-30 * sum) break;
  }
  return sum;
}

// Continuous-time heat kernel of the axis graph on the infinite Z^2 lattice:
// p_t(0, (m,n)) = e^{-4t} I_m(2t) I_n(2t).
inline double z2_heat_kernel(double t, int m, int n) {
  return std::exp(-4.0 * t) * bessel_i(m, 2.0 * t) * bessel_i(n, 2.0 * t);
}

// Neumann heat kernel of the interval [0, l]:
// p_t(x, y) = 1/l + (2/l) sum_k e^{-(k pi / l)^2 t} cos(k pi x / l) cos(k pi y / l).
inline double interval_neumann_kernel(double t, double l, double x, double y) {
  double sum = 1.0 / l;
  for (int k = 1; k < 100000; ++k) {
    const double lam = (k * M_PI / l) * (k * M_PI / l);
    const double term = 2.0 / l * std::exp(-lam * t) * std::cos(k * M_PI * x / l) *
                        std::cos(k * M_PI * y / l);
    sum += term;
    if (std::exp(-lam * t) < 1e-18) break;
  }
  return sum;
}

// Exhaustive minimum pairwise distance, O(n^2).
inline double brute_min_pairwise(const std::vector<std::vector<double>>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double s = 0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        const double d = pts[i][k] - pts[j][k];
        s += d * d;
      }
      best = std::min(best, std::sqrt(s));
    }
  }
  return best;
}

}  // namespace oracles
