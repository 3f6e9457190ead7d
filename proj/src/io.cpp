#include "delone/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace delone::io {

using nlohmann::json;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw input_error("cannot open for writing: " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open for reading: " + path);
  return f;
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

void save_points(const PointSet& ps, const std::string& csv_path, const std::string& meta_path,
                 const DeloneParams* params) {
  auto f = open_out(csv_path);
  f << "id";
  for (int i = 0; i < ps.dim; ++i) f << ",x" << i;
  f << "\n";
  for (std::size_t id = 0; id < ps.points.size(); ++id) {
    f << id;
    for (double c : ps.points[id]) f << "," << fmt(c);
    f << "\n";
  }

  json meta;
  meta["dim"] = ps.dim;
  meta["window"] = {{"center", ps.window.center}, {"half_width", ps.window.half_width}};
  meta["generator"] = ps.generator;
  meta["seed"] = ps.seed;
  if (params) {
    meta["params"] = {{"r", params->r}, {"R", params->R}, {"probe_pitch", params->probe_pitch}};
  }
  auto m = open_out(meta_path);
  m << meta.dump(2) << "\n";
}

PointSet load_points(const std::string& csv_path, const std::string& meta_path,
                     DeloneParams* params_out) {
  PointSet ps;
  json meta;
  {
    auto m = open_in(meta_path);
    m >> meta;
  }
  ps.dim = meta.at("dim").get<int>();
  ps.window.center = meta.at("window").at("center").get<std::vector<double>>();
  ps.window.half_width = meta.at("window").at("half_width").get<double>();
  ps.generator = meta.value("generator", "");
  ps.seed = meta.value("seed", 0ull);
  if (params_out && meta.contains("params")) {
    params_out->r = meta["params"].value("r", 0.0);
    params_out->R = meta["params"].value("R", 0.0);
    params_out->probe_pitch = meta["params"].value("probe_pitch", 0.0);
  }

  auto f = open_in(csv_path);
  std::string line;
  if (!std::getline(f, line)) throw input_error("empty points csv: " + csv_path);
  std::size_t expect = 0;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto cols = split(line);
    if (static_cast<int>(cols.size()) != ps.dim + 1) {
      throw input_error("points csv row has wrong arity: " + line);
    }
    if (std::stoul(cols[0]) != expect) {
      throw input_error("points csv ids must be consecutive from 0");
    }
    ++expect;
    Vec p(ps.dim);
    for (int i = 0; i < ps.dim; ++i) p[i] = std::stod(cols[i + 1]);
    ps.points.push_back(std::move(p));
  }
  return ps;
}

void save_edges(const NeighborRelation& rel, const std::string& path) {
  auto f = open_out(path);
  f << "id_a,id_b,distance\n";
  for (const auto& [a, b] : rel.pairs) {
    f << a << "," << b << "," << fmt(distance(rel.ps->points[a], rel.ps->points[b])) << "\n";
  }
}

std::vector<std::pair<int, int>> load_edges(const std::string& path) {
  auto f = open_in(path);
  std::string line;
  if (!std::getline(f, line)) throw input_error("empty edge csv: " + path);
  std::vector<std::pair<int, int>> pairs;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto cols = split(line);
    if (cols.size() < 2) throw input_error("edge csv row has wrong arity: " + line);
    pairs.emplace_back(std::stoi(cols[0]), std::stoi(cols[1]));
  }
  return pairs;
}

void save_cells(const TilingSystem& ts, const std::string& path) {
  json cells = json::array();
  for (const auto& [id, cell] : ts.cells) {
    json v = json::array();
    for (const auto& p : cell.v) v.push_back({p[0], p[1]});
    cells.push_back({{"id", id}, {"vertices", v}, {"area", cell.area()}});
  }
  auto f = open_out(path);
  f << cells.dump(2) << "\n";
}

void save_facets(const std::vector<FacetPair>& facets, const std::string& path) {
  auto f = open_out(path);
  f << "id_a,id_b,shared_length\n";
  for (const auto& fp : facets) {
    f << fp.a << "," << fp.b << "," << fmt(fp.shared_len) << "\n";
  }
}

void save_kernel(const KernelSamples& k, const std::string& path) {
  auto f = open_out(path);
  f << "x_id,y_id,t,p,mode,certificate\n";
  const std::string mode = k.boundary == Boundary::neumann ? "neumann" : "dirichlet";
  for (std::size_t ti = 0; ti < k.times.size(); ++ti) {
    for (std::size_t yi = 0; yi < k.target_ids.size(); ++yi) {
      f << k.source_id << "," << k.target_ids[yi] << "," << fmt(k.times[ti]) << ","
        << fmt(k.values(ti, yi)) << "," << mode << "," << fmt(k.certificate) << "\n";
    }
  }
}

void save_operator(const DiscreteOperator& op, const std::string& path) {
  auto f = open_out(path);
  f << "row_id,col_id,value\n";
  for (int col = 0; col < op.A.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.A, col); it; ++it) {
      if (it.row() <= it.col()) {
        f << op.vertex_ids[it.row()] << "," << op.vertex_ids[it.col()] << "," << fmt(it.value())
          << "\n";
      }
    }
  }
}

void save_mesh(const MetricGraph& g, const GraphMesh& mesh, const std::string& path) {
  if (g.ps->dim != 2) throw input_error("save_mesh: node export is fixed to dim 2");
  auto f = open_out(path);
  f << "node_id,edge_id,offset,x,y\n";
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    const auto& nd = mesh.nodes[i];
    Vec pos;
    if (static_cast<int>(i) < mesh.n_vertices) {
      pos = g.ps->points[i];
    } else {
      pos = g.position(nd);
    }
    f << i << "," << nd.edge << "," << fmt(nd.offset) << "," << fmt(pos[0]) << "," << fmt(pos[1])
      << "\n";
  }
}

void save_curve(const std::vector<std::pair<double, double>>& curve, const std::string& path) {
  auto f = open_out(path);
  f << "s,mu\n";
  for (const auto& [s, mu] : curve) f << fmt(s) << "," << fmt(mu) << "\n";
}

void save_scatter(const std::vector<std::pair<double, double>>& xy, const std::string& path) {
  auto f = open_out(path);
  f << "X,Y\n";
  for (const auto& [x, y] : xy) f << fmt(x) << "," << fmt(y) << "\n";
}

}  // namespace delone::io
