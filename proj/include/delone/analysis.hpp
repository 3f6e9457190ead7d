#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "delone/graphs.hpp"
#include "delone/heat_discrete.hpp"
#include "delone/heat_metric.hpp"

namespace delone {

struct DoublingSample {
  int center;
  double s;
  double mu_s;
  double mu_2s;
  double ratio;
};

struct DoublingReport {
  std::string space;  // "discrete" or "metric"
  std::vector<DoublingSample> samples;
  double max_ratio = 0.0;
  double nu_hat = 0.0;  // log2(max_ratio)
  int excluded_truncated = 0;
  int centers_used = 0;
};

/// mu(B_2s)/mu(B_s) over centers and radii; truncated balls are excluded.
DoublingReport volume_doubling_scan_discrete(const CombinatorialGraph& g,
                                             const std::vector<int>& centers,
                                             const std::vector<double>& s_grid);
DoublingReport volume_doubling_scan_metric(const MetricGraph& g, const std::vector<int>& centers,
                                           const std::vector<double>& s_grid);

struct PoincareSample {
  int center;
  double s;
  double lambda1;
  double c_p;           // 1/(s^2 lambda1)
  double var_residual;  // |  ||u-mean||^2 - (1/lambda1) E(u) | / ||u-mean||^2
};

struct PoincareReport {
  std::string space;
  std::vector<PoincareSample> samples;
  double sup_cp = 0.0;
  double max_var_residual = 0.0;
  int excluded_disconnected = 0;
  int excluded_truncated = 0;
};

/// Optimal Poincare constant per ball from the Neumann spectral gap: the
/// discrete case restricts the plain Laplacian to the ball's internal edges;
/// the metric case meshes the ball and solves the generalized problem.
PoincareReport poincare_scan_discrete(const CombinatorialGraph& g, const std::vector<int>& centers,
                                      const std::vector<double>& s_grid);
PoincareReport poincare_scan_metric(const MetricGraph& g, double dmax,
                                    const std::vector<int>& centers,
                                    const std::vector<double>& s_grid);

/// One admitted observation for the Gaussian envelope: kernel value p at
/// (x, y, t) with Euclidean distance d, intrinsic distance, and the measure
/// of the intrinsic ball of radius sqrt(t) around the source.
struct EnvelopeSample {
  double d = 0.0;
  double intrinsic = 0.0;  // d_c (discrete) or d_m (metric)
  double t = 0.0;
  double p = 0.0;
  double mu = 0.0;
  bool ball_truncated = false;
};

struct EnvelopeFit {
  double b = 0.0;       // shared exponential rate (c2 = c4)
  double a = 0.0;       // regression intercept
  double c1 = 0.0;      // exp(a + min residual)
  double c3 = 0.0;      // exp(a + max residual)
  double spread = 0.0;  // log(c3/c1)
  int admitted = 0;
  int rejected_regime = 0;
  int rejected_truncated = 0;
  int rejected_nonpositive = 0;
  bool envelope_holds = true;  // by construction, asserted over the samples
  // reported alternative: separate least-squares rates for the upper and
  // lower halves of the residual cloud (off the pass/fail path)
  double b_upper = 0.0;
  double b_lower = 0.0;
  std::vector<std::pair<double, double>> scatter;  // (X, Y) of admitted samples
};

enum class EnvelopeSpace { discrete, metric };

/// Least-squares line through Y = log(p mu(B_sqrt(t))) against X = d^2/t.
/// Discrete samples outside the regime t > max(1, d_c) are rejected; metric
/// samples require t >= dmax^2. Truncated balls are always rejected.
EnvelopeFit gaussian_envelope_fit(const std::vector<EnvelopeSample>& samples, EnvelopeSpace space,
                                  double dmax = 0.0);

/// Assemble envelope samples from a discrete kernel run.
std::vector<EnvelopeSample> collect_envelope_discrete(const CombinatorialGraph& g,
                                                      const KernelSamples& kernels);

/// Assemble envelope samples from a metric kernel run (vertex targets).
std::vector<EnvelopeSample> collect_envelope_metric(const MetricGraph& g, const GraphMesh& mesh,
                                                    const MetricKernelSamples& kernels);

}  // namespace delone
