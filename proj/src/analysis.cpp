#include "delone/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "delone/eig.hpp"

namespace delone {

DoublingReport volume_doubling_scan_discrete(const CombinatorialGraph& g,
                                             const std::vector<int>& centers,
                                             const std::vector<double>& s_grid) {
  DoublingReport rep;
  rep.space = "discrete";
  rep.centers_used = static_cast<int>(centers.size());
  for (int c : centers) {
    for (double s : s_grid) {
      const auto b1 = ball_count_c(g, c, s);
      const auto b2 = ball_count_c(g, c, 2.0 * s);
      if (b1.truncated || b2.truncated) {
        ++rep.excluded_truncated;
        continue;
      }
      const double ratio = b2.value / b1.value;
      rep.samples.push_back({c, s, b1.value, b2.value, ratio});
      rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
  }
  if (rep.samples.empty()) {
    throw input_error("volume_doubling_scan: every ball was truncated; window too small");
  }
  rep.nu_hat = std::log2(rep.max_ratio);
  return rep;
}

DoublingReport volume_doubling_scan_metric(const MetricGraph& g, const std::vector<int>& centers,
                                           const std::vector<double>& s_grid) {
  DoublingReport rep;
  rep.space = "metric";
  rep.centers_used = static_cast<int>(centers.size());
  for (int c : centers) {
    const auto a = g.vertex_point(c);
    for (double s : s_grid) {
      const auto b1 = ball_measure_m(g, a, s);
      const auto b2 = ball_measure_m(g, a, 2.0 * s);
      if (b1.truncated || b2.truncated) {
        ++rep.excluded_truncated;
        continue;
      }
      if (!(b1.value > 0)) continue;  // cannot happen for s > 0 on a vertex with edges
      const double ratio = b2.value / b1.value;
      rep.samples.push_back({c, s, b1.value, b2.value, ratio});
      rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
  }
  if (rep.samples.empty()) {
    throw input_error("volume_doubling_scan: every ball was truncated; window too small");
  }
  rep.nu_hat = std::log2(rep.max_ratio);
  return rep;
}

namespace {

// Smallest nonzero eigenvalue of the plain Laplacian on the ball's internal
// edges, plus the Poincare variational-identity residual of its eigenvector.
struct GapResult {
  bool connected = true;
  double lambda1 = 0.0;
  double residual = 0.0;
};

GapResult discrete_ball_gap(const CombinatorialGraph& g, const std::vector<int>& ball) {
  const int m = static_cast<int>(ball.size());
  std::vector<int> local(g.size(), -1);
  for (int i = 0; i < m; ++i) local[ball[i]] = i;

  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int v : g.adj[ball[i]]) {
      const int j = local[v];
      if (j < 0) continue;  // internal edges only (Neumann convention)
      L(i, j) -= 1.0;
      L(i, i) += 1.0;
    }
  }
  GapResult out;
  // connectivity of the ball subgraph
  std::vector<bool> seen(m, false);
  std::deque<int> queue{0};
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int j = 0; j < m; ++j) {
      if (!seen[j] && L(u, j) != 0.0) {
        seen[j] = true;
        ++reached;
        queue.push_back(j);
      }
    }
  }
  if (reached < m) {
    out.connected = false;
    return out;
  }
  const auto es = eig::dense_sym_eig(L);
  out.lambda1 = es.values[1];
  const Eigen::VectorXd u = es.vectors.col(1);
  const double mean = u.mean();
  const double var = (u.array() - mean).matrix().squaredNorm();
  const double energy = u.dot(L * u);
  out.residual = std::abs(var - energy / out.lambda1) / var;
  return out;
}

}  // namespace

PoincareReport poincare_scan_discrete(const CombinatorialGraph& g, const std::vector<int>& centers,
                                      const std::vector<double>& s_grid) {
  PoincareReport rep;
  rep.space = "discrete";
  for (int c : centers) {
    for (double s : s_grid) {
      const auto bv = ball_count_c(g, c, s);
      if (bv.truncated) {
        ++rep.excluded_truncated;
        continue;
      }
      const auto ball = dc_ball_vertices(g, c, s);
      if (ball.size() < 2) continue;
      const auto gap = discrete_ball_gap(g, ball);
      if (!gap.connected) {
        ++rep.excluded_disconnected;
        continue;
      }
      const double cp = 1.0 / (s * s * gap.lambda1);
      rep.samples.push_back({c, s, gap.lambda1, cp, gap.residual});
      rep.sup_cp = std::max(rep.sup_cp, cp);
      rep.max_var_residual = std::max(rep.max_var_residual, gap.residual);
    }
  }
  return rep;
}

namespace {

// Metric ball submesh: elements whose endpoints both lie within d_m-distance s
// of the center vertex.
struct BallMesh {
  FemPair fem;
  bool connected = true;
  int nodes = 0;
};

BallMesh metric_ball_fem(const MetricGraph& g, double dmax, int center, double s) {
  const auto dist = dm_vertex_distances(g, g.vertex_point(center));
  BallMesh out;
  std::vector<Eigen::Triplet<double>> kt, mt;
  // nodes created on demand: vertex v -> node, (edge, index) -> node
  std::vector<int> vnode(g.n_vertices(), -1);
  int next = 0;
  auto vertex_node = [&](int v) {
    if (vnode[v] < 0) vnode[v] = next++;
    return vnode[v];
  };
  std::vector<std::array<int, 2>> elems;
  std::vector<double> lens;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const MetricEdge& ed = g.edges[e];
    const int m = std::max(1, static_cast<int>(std::ceil(ed.len / dmax - 1e-12)));
    const double h = ed.len / m;
    // interior mesh nodes of this edge at offsets i*h
    std::vector<int> ids(m + 1, -1);
    auto node_at = [&](int i) {
      if (i == 0) return vertex_node(ed.a);
      if (i == m) return vertex_node(ed.b);
      if (ids[i] < 0) ids[i] = next++;
      return ids[i];
    };
    for (int i = 0; i < m; ++i) {
      const double o0 = i * h, o1 = (i + 1) * h;
      const double d0 = std::min(dist[ed.a] + o0, dist[ed.b] + (ed.len - o0));
      const double d1 = std::min(dist[ed.a] + o1, dist[ed.b] + (ed.len - o1));
      if (d0 <= s && d1 <= s) {
        elems.push_back({node_at(i), node_at(i + 1)});
        lens.push_back(h);
      }
    }
  }
  out.nodes = next;
  if (next < 2 || elems.empty()) {
    out.connected = false;
    return out;
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const auto [a, b] = elems[i];
    const double l = lens[i];
    kt.emplace_back(a, a, 1.0 / l);
    kt.emplace_back(b, b, 1.0 / l);
    kt.emplace_back(a, b, -1.0 / l);
    kt.emplace_back(b, a, -1.0 / l);
    mt.emplace_back(a, a, l / 3.0);
    mt.emplace_back(b, b, l / 3.0);
    mt.emplace_back(a, b, l / 6.0);
    mt.emplace_back(b, a, l / 6.0);
  }
  out.fem.K.resize(next, next);
  out.fem.M.resize(next, next);
  out.fem.K.setFromTriplets(kt.begin(), kt.end());
  out.fem.M.setFromTriplets(mt.begin(), mt.end());
  for (double l : lens) out.fem.total_length += l;

  // connectivity via element adjacency
  std::vector<std::vector<int>> adj(next);
  for (const auto& [a, b] : elems) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(next, false);
  std::deque<int> queue{0};
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  out.connected = reached == next;
  return out;
}

}  // namespace

PoincareReport poincare_scan_metric(const MetricGraph& g, double dmax,
                                    const std::vector<int>& centers,
                                    const std::vector<double>& s_grid) {
  PoincareReport rep;
  rep.space = "metric";
  for (int c : centers) {
    for (double s : s_grid) {
      if (s > g.ps->window.boundary_distance(g.ps->points[c])) {
        ++rep.excluded_truncated;
        continue;
      }
      auto ball = metric_ball_fem(g, dmax, c, s);
      if (!ball.connected) {
        ++rep.excluded_disconnected;
        continue;
      }
      const auto es = eigenpairs(ball.fem, 2);
      const double lambda1 = es.values[1];
      if (!(lambda1 > 0)) {
        ++rep.excluded_disconnected;
        continue;
      }
      const Eigen::VectorXd u = es.vectors.col(1);
      const Eigen::VectorXd Mu = ball.fem.M * u;
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(u.size());
      const double mass = ones.dot(ball.fem.M * ones);
      const double mean = ones.dot(Mu) / mass;
      const double var = u.dot(Mu) - mean * mean * mass;
      const double energy = u.dot(ball.fem.K * u);
      const double residual = std::abs(var - energy / lambda1) / var;
      const double cp = 1.0 / (s * s * lambda1);
      rep.samples.push_back({c, s, lambda1, cp, residual});
      rep.sup_cp = std::max(rep.sup_cp, cp);
      rep.max_var_residual = std::max(rep.max_var_residual, residual);
    }
  }
  return rep;
}

EnvelopeFit gaussian_envelope_fit(const std::vector<EnvelopeSample>& samples, EnvelopeSpace space,
                                  double dmax) {
  EnvelopeFit fit;
  std::vector<double> X, Y;
  for (const auto& s : samples) {
    if (space == EnvelopeSpace::discrete) {
      if (!(s.t > std::max(1.0, s.intrinsic))) {
        ++fit.rejected_regime;
        continue;
      }
    } else {
      if (!(s.t >= dmax * dmax)) {
        ++fit.rejected_regime;
        continue;
      }
    }
    if (s.ball_truncated) {
      ++fit.rejected_truncated;
      continue;
    }
    if (!(s.p > 0) || !(s.mu > 0)) {
      ++fit.rejected_nonpositive;
      continue;
    }
    X.push_back(s.d * s.d / s.t);
    Y.push_back(std::log(s.p * s.mu));
  }
  fit.admitted = static_cast<int>(X.size());
  if (fit.admitted == 0) throw input_error("gaussian_envelope_fit: no admitted samples");

  if (fit.admitted == 1) {
    fit.a = Y[0];
    fit.b = 0.0;
    fit.c1 = fit.c3 = std::exp(Y[0]);
    fit.scatter = {{X[0], Y[0]}};
    return fit;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = fit.admitted;
  for (int i = 0; i < fit.admitted; ++i) {
    sx += X[i];
    sy += Y[i];
    sxx += X[i] * X[i];
    sxy += X[i] * Y[i];
  }
  const double denom = n * sxx - sx * sx;
  const double beta = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  fit.a = (sy - beta * sx) / n;
  fit.b = -beta;

  double rmin = kInf, rmax = -kInf;
  for (int i = 0; i < fit.admitted; ++i) {
    const double r = Y[i] - (fit.a + beta * X[i]);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  fit.c1 = std::exp(fit.a + rmin);
  fit.c3 = std::exp(fit.a + rmax);
  fit.spread = rmax - rmin;

  // construction check: c1 e^{-bX} <= p mu <= c3 e^{-bX} on every sample
  for (int i = 0; i < fit.admitted; ++i) {
    const double lo = std::log(fit.c1) - fit.b * X[i];
    const double hi = std::log(fit.c3) - fit.b * X[i];
    if (Y[i] < lo - 1e-9 || Y[i] > hi + 1e-9) fit.envelope_holds = false;
    fit.scatter.emplace_back(X[i], Y[i]);
  }

  // reported alternative with distinct rates, from the residual-split halves
  auto half_slope = [&](bool upper) {
    double hx = 0, hy = 0, hxx = 0, hxy = 0;
    int hn = 0;
    for (int i = 0; i < fit.admitted; ++i) {
      const double r = Y[i] - (fit.a + beta * X[i]);
      if (upper != (r >= 0)) continue;
      hx += X[i];
      hy += Y[i];
      hxx += X[i] * X[i];
      hxy += X[i] * Y[i];
      ++hn;
    }
    if (hn < 2) return fit.b;
    const double hd = hn * hxx - hx * hx;
    return hd != 0.0 ? -(hn * hxy - hx * hy) / hd : fit.b;
  };
  fit.b_upper = half_slope(true);
  fit.b_lower = half_slope(false);
  return fit;
}

std::vector<EnvelopeSample> collect_envelope_discrete(const CombinatorialGraph& g,
                                                      const KernelSamples& kernels) {
  std::vector<EnvelopeSample> out;
  const auto dist = dc_distances(g, kernels.source_id);
  const Vec& src = g.ps->points[kernels.source_id];
  for (std::size_t ti = 0; ti < kernels.times.size(); ++ti) {
    const double t = kernels.times[ti];
    const auto mu = ball_count_c(g, kernels.source_id, std::sqrt(t));
    for (std::size_t yi = 0; yi < kernels.target_ids.size(); ++yi) {
      const int y = kernels.target_ids[yi];
      EnvelopeSample s;
      s.d = distance(src, g.ps->points[y]);
      s.intrinsic = dist[y] < 0 ? kInf : dist[y];
      s.t = t;
      s.p = kernels.values(ti, yi);
      s.mu = mu.value;
      s.ball_truncated = mu.truncated;
      out.push_back(s);
    }
  }
  return out;
}

std::vector<EnvelopeSample> collect_envelope_metric(const MetricGraph& g, const GraphMesh& mesh,
                                                    const MetricKernelSamples& kernels) {
  std::vector<EnvelopeSample> out;
  const int src_node = kernels.source_node;
  if (src_node >= mesh.n_vertices) {
    throw input_error("collect_envelope_metric: source must be a vertex node");
  }
  const auto a = g.vertex_point(src_node);
  const auto dist = dm_vertex_distances(g, a);
  const Vec src_pos = g.ps->points[src_node];
  for (std::size_t ti = 0; ti < kernels.times.size(); ++ti) {
    const double t = kernels.times[ti];
    const auto mu = ball_measure_m(g, a, std::sqrt(t));
    for (std::size_t yi = 0; yi < kernels.target_nodes.size(); ++yi) {
      const int ynode = kernels.target_nodes[yi];
      if (ynode >= mesh.n_vertices) {
        throw input_error("collect_envelope_metric: targets must be vertex nodes");
      }
      EnvelopeSample s;
      s.d = distance(src_pos, g.ps->points[ynode]);
      s.intrinsic = dist[ynode];
      s.t = t;
      s.p = kernels.values(ti, yi);
      s.mu = mu.value;
      s.ball_truncated = mu.truncated;
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace delone
