#include "delone/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

namespace delone {

CombinatorialGraph CombinatorialGraph::from_relation(const NeighborRelation& rel) {
  CombinatorialGraph g;
  g.ps = rel.ps;
  g.S = rel.S;
  g.adj = rel.adjacency();
  return g;
}

std::vector<int> dc_distances(const CombinatorialGraph& g, int x) {
  std::vector<int> dist(g.adj.size(), -1);
  std::deque<int> queue;
  dist[x] = 0;
  queue.push_back(x);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : g.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

int dc(const CombinatorialGraph& g, int x, int y) {
  if (x == y) return 0;
  std::vector<int> dist(g.adj.size(), -1);
  std::deque<int> queue;
  dist[x] = 0;
  queue.push_back(x);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : g.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        if (v == y) return dist[v];
        queue.push_back(v);
      }
    }
  }
  return -1;
}

MetricGraph MetricGraph::from_relation(const NeighborRelation& rel) {
  MetricGraph g;
  g.ps = rel.ps;
  g.S = rel.S;
  g.adj.resize(rel.ps->size());
  g.edges.reserve(rel.pairs.size());
  for (const auto& [a, b] : rel.pairs) {
    const double len = distance(rel.ps->points[a], rel.ps->points[b]);
    const int e = static_cast<int>(g.edges.size());
    g.edges.push_back({a, b, len});
    g.adj[a].emplace_back(b, e);
    g.adj[b].emplace_back(a, e);
    g.total_length += len;
  }
  return g;
}

EdgePoint MetricGraph::vertex_point(int v) const {
  if (adj[v].empty()) throw input_error("vertex_point: isolated vertex has no edge address");
  const int e = adj[v].front().second;
  return edges[e].a == v ? EdgePoint{e, 0.0} : EdgePoint{e, edges[e].len};
}

Vec MetricGraph::position(const EdgePoint& p) const {
  const MetricEdge& e = edges[p.edge];
  const Vec& pa = ps->points[e.a];
  const Vec& pb = ps->points[e.b];
  const double t = e.len > 0 ? p.offset / e.len : 0.0;
  Vec out(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) out[i] = pa[i] + t * (pb[i] - pa[i]);
  return out;
}

int MetricGraph::as_vertex(const EdgePoint& p, double tol) const {
  const MetricEdge& e = edges[p.edge];
  if (p.offset <= tol) return e.a;
  if (p.offset >= e.len - tol) return e.b;
  return -1;
}

std::vector<double> dm_vertex_distances(const MetricGraph& g, const EdgePoint& a) {
  std::vector<double> dist(g.n_vertices(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  const int av = g.as_vertex(a);
  if (av >= 0) {
    dist[av] = 0.0;
    pq.emplace(0.0, av);
  } else {
    const MetricEdge& e = g.edges[a.edge];
    dist[e.a] = a.offset;
    dist[e.b] = e.len - a.offset;
    pq.emplace(dist[e.a], e.a);
    pq.emplace(dist[e.b], e.b);
  }
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (const auto& [v, eid] : g.adj[u]) {
      const double nd = d + g.edges[eid].len;
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.emplace(nd, v);
      }
    }
  }
  return dist;
}

double dm(const MetricGraph& g, const EdgePoint& a, const EdgePoint& b) {
  if (a.edge < 0 || a.edge >= static_cast<int>(g.edges.size()) || b.edge < 0 ||
      b.edge >= static_cast<int>(g.edges.size())) {
    throw input_error("dm: invalid edge address");
  }
  const auto dist = dm_vertex_distances(g, a);
  const MetricEdge& eb = g.edges[b.edge];
  double best = std::min(dist[eb.a] + b.offset, dist[eb.b] + (eb.len - b.offset));
  if (a.edge == b.edge) {
    best = std::min(best, std::abs(a.offset - b.offset));
  }
  return best;
}

namespace {

bool box_truncated(const PointSet& ps, const Vec& center_pos, double reach) {
  return reach > ps.window.boundary_distance(center_pos);
}

}  // namespace

BallValue ball_count_c(const CombinatorialGraph& g, int x, double s, BallMode mode) {
  if (s < 0) throw input_error("ball_count_c: radius must be nonnegative");
  BallValue out;
  long count = 0;
  if (mode == BallMode::combinatorial) {
    const auto dist = dc_distances(g, x);
    for (int d : dist) {
      if (d >= 0 && d <= s) ++count;
    }
    // a d_c ball of radius s reaches at most s*S in the ambient metric
    out.truncated = box_truncated(*g.ps, g.ps->points[x], std::floor(s) * g.S);
  } else {
    MetricGraph m;  // metric-ball mode needs edge lengths; rebuild locally
    m.ps = g.ps;
    m.S = g.S;
    m.adj.resize(g.adj.size());
    for (int u = 0; u < static_cast<int>(g.adj.size()); ++u) {
      for (int v : g.adj[u]) {
        if (v > u) {
          const int e = static_cast<int>(m.edges.size());
          m.edges.push_back({u, v, distance(g.ps->points[u], g.ps->points[v])});
          m.adj[u].emplace_back(v, e);
          m.adj[v].emplace_back(u, e);
        }
      }
    }
    const auto dist = dm_vertex_distances(m, m.vertex_point(x));
    for (double d : dist) {
      if (d <= s) ++count;
    }
    out.truncated = box_truncated(*g.ps, g.ps->points[x], s);
  }
  out.value = static_cast<double>(count);
  return out;
}

std::vector<int> dc_ball_vertices(const CombinatorialGraph& g, int x, double s) {
  const auto dist = dc_distances(g, x);
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(dist.size()); ++v) {
    if (dist[v] >= 0 && dist[v] <= s) out.push_back(v);
  }
  return out;
}

BallValue ball_measure_m(const MetricGraph& g, const EdgePoint& a, double s) {
  if (s < 0) throw input_error("ball_measure_m: radius must be nonnegative");
  const auto dist = dm_vertex_distances(g, a);
  double total = 0.0;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const MetricEdge& ed = g.edges[e];
    const double l = ed.len;
    // covered subset of [0, l]: union of the end intervals and, on a's own
    // edge, the direct interval around a.offset
    std::vector<std::pair<double, double>> iv;
    const double from_a = std::min(std::max(s - dist[ed.a], 0.0), l);
    const double from_b = std::min(std::max(s - dist[ed.b], 0.0), l);
    if (from_a > 0) iv.emplace_back(0.0, from_a);
    if (from_b > 0) iv.emplace_back(l - from_b, l);
    if (e == a.edge) {
      const double lo = std::max(a.offset - s, 0.0);
      const double hi = std::min(a.offset + s, l);
      if (hi > lo) iv.emplace_back(lo, hi);
    }
    if (iv.empty()) continue;
    std::sort(iv.begin(), iv.end());
    double covered = 0.0, cur_lo = iv[0].first, cur_hi = iv[0].second;
    for (std::size_t i = 1; i < iv.size(); ++i) {
      if (iv[i].first <= cur_hi) {
        cur_hi = std::max(cur_hi, iv[i].second);
      } else {
        covered += cur_hi - cur_lo;
        cur_lo = iv[i].first;
        cur_hi = iv[i].second;
      }
    }
    covered += cur_hi - cur_lo;
    total += covered;
  }
  BallValue out;
  out.value = total;
  out.truncated = box_truncated(*g.ps, g.position(a), s);
  return out;
}

double equivalence_constant(int dim, double r, double S) {
  const double sigma = ball_volume(dim - 1, S + r);
  return (sigma + ball_volume(dim, S + r) / (2.0 * r)) / ball_volume(dim, r);
}

EquivalenceReport equivalence_constants(const NeighborRelation& rel, const DeloneParams& params,
                                        double margin, int samples, std::uint64_t seed) {
  EquivalenceReport rep;
  rep.seed = seed;
  rep.samples = samples;
  rep.C = equivalence_constant(rel.ps->dim, params.r, rel.S);

  const auto g = CombinatorialGraph::from_relation(rel);
  const auto m = MetricGraph::from_relation(rel);
  const auto interior = rel.ps->interior_ids(margin);
  if (interior.size() < 2) throw input_error("equivalence_constants: not enough interior points");

  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const int x = interior[rng.below(interior.size())];
    int y = x;
    while (y == x) y = interior[rng.below(interior.size())];
    const double d = distance(rel.ps->points[x], rel.ps->points[y]);
    const int hops = dc(g, x, y);
    if (hops < 0) throw numerical_error("equivalence_constants: sampled pair is disconnected");
    const double dmv = dm(m, m.vertex_point(x), m.vertex_point(y));
    rep.max_dm_over_d = std::max(rep.max_dm_over_d, dmv / d);
    rep.max_Sdc_over_dm = std::max(rep.max_Sdc_over_dm, rel.S * hops / dmv);
    rep.max_dc_over_d = std::max(rep.max_dc_over_d, hops / d);
    const bool ok = d <= dmv * (1 + 1e-9) && dmv <= rel.S * hops * (1 + 1e-9) &&
                    hops <= rep.C * d * (1 + 1e-9);
    rep.bounds_hold = rep.bounds_hold && ok;
  }
  return rep;
}

}  // namespace delone
