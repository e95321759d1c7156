#include "hypermds/data_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "hypermds/rng.hpp"

namespace hypermds {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

std::string loc(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_nan_token(const std::string& s) {
  if (s.size() != 3) return false;
  return (s[0] == 'n' || s[0] == 'N') && (s[1] == 'a' || s[1] == 'A') &&
         (s[2] == 'n' || s[2] == 'N');
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_number(const std::string& token, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) fail("trailing characters in number at " + where);
    return v;
  } catch (const std::invalid_argument&) {
    fail("cannot parse number '" + token + "' at " + where);
  } catch (const std::out_of_range&) {
    fail("number out of range at " + where);
  }
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write " + path.string());
  return out;
}

void sample_disk_points(Rng& rng, std::size_t n, double radius_bound,
                        std::vector<Complex>& out) {
  constexpr double kMinSeparation = 1e-6;
  const double two_pi = 8.0 * std::atan(1.0);
  out.clear();
  while (out.size() < n) {
    const double angle = rng.uniform(0.0, two_pi);
    const double radius = rng.uniform(0.0, radius_bound);
    const Complex c{radius * std::cos(angle), radius * std::sin(angle)};
    bool separated = true;
    for (const Complex& p : out) {
      if (hyp_distance(DiskPoint(p), DiskPoint(c)) < kMinSeparation) {
        separated = false;
        break;
      }
    }
    if (separated) out.push_back(c);
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SyntheticResult generate_synthetic_with_points(const SyntheticSpec& spec) {
  if (spec.n < 1) fail("synthetic spec needs n >= 1");
  if (!(spec.noise_e_m >= 0.0) || spec.noise_e_m >= 1.0) {
    fail("noise level e_m must lie in [0, 1)");
  }
  Rng rng(spec.seed);
  const std::size_t n = spec.n;
  SquareMatrix delta(n, 0.0);
  std::vector<Complex> flat_points;

  switch (spec.kind) {
    case SyntheticKind::EuclideanPlane: {
      std::vector<PlanePoint> pts;
      constexpr double kMinSeparation = 1e-6;
      while (pts.size() < n) {
        const PlanePoint c{rng.next_double(), rng.next_double()};
        bool ok = true;
        for (const PlanePoint& p : pts) {
          if (euclid_distance(p, c) < kMinSeparation) {
            ok = false;
            break;
          }
        }
        if (ok) pts.push_back(c);
      }
      for (std::size_t j = 0; j < n; ++j) {
        flat_points.emplace_back(pts[j].x, pts[j].y);
        for (std::size_t k = j + 1; k < n; ++k) {
          const double d = euclid_distance(pts[j], pts[k]);
          delta(j, k) = d;
          delta(k, j) = d;
        }
      }
      break;
    }
    case SyntheticKind::Sphere: {
      if (!(spec.sphere_radius > 0.0)) fail("sphere radius must be positive");
      // Marsaglia: uniform on the sphere via a rejected square.
      std::vector<std::array<double, 3>> pts;
      while (pts.size() < n) {
        double x1, x2, s;
        do {
          x1 = rng.uniform(-1.0, 1.0);
          x2 = rng.uniform(-1.0, 1.0);
          s = x1 * x1 + x2 * x2;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(1.0 - s);
        pts.push_back({2.0 * x1 * f, 2.0 * x2 * f, 1.0 - 2.0 * s});
      }
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          const auto& u = pts[j];
          const auto& v = pts[k];
          const double dot =
              u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
          const double cx = u[1] * v[2] - u[2] * v[1];
          const double cy = u[2] * v[0] - u[0] * v[2];
          const double cz = u[0] * v[1] - u[1] * v[0];
          const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
          const double d = spec.sphere_radius * std::atan2(cross, dot);
          delta(j, k) = d;
          delta(k, j) = d;
        }
      }
      break;
    }
    case SyntheticKind::HyperbolicDisk: {
      // Same sampler as the solver's initializer, widened to radius 0.9 so
      // large hyperbolic distances appear.
      sample_disk_points(rng, n, 0.9, flat_points);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          const double d =
              hyp_distance(DiskPoint(flat_points[j]), DiskPoint(flat_points[k]));
          delta(j, k) = d;
          delta(k, j) = d;
        }
      }
      break;
    }
  }

  DissimilarityData data = DissimilarityData::from_delta(std::move(delta));
  if (spec.noise_e_m > 0.0) {
    data = add_noise(data, spec.noise_e_m, Rng::substream(spec.seed, 0x6e6f69));
  }
  return {std::move(data), std::move(flat_points)};
}

DissimilarityData generate_synthetic(const SyntheticSpec& spec) {
  return generate_synthetic_with_points(spec).data;
}

DissimilarityData add_noise(const DissimilarityData& data, double e_m,
                            std::uint64_t seed) {
  if (!(e_m >= 0.0) || e_m >= 1.0) fail("noise level e_m must lie in [0, 1)");
  const std::size_t n = data.size();
  SquareMatrix delta = data.delta_matrix();
  Rng rng(seed);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (!data.active(j, k)) continue;
      const double lo = (1.0 - e_m) * delta(j, k);
      const double hi = (1.0 + e_m) * delta(j, k);
      const double noisy = rng.uniform(lo, hi);
      delta(j, k) = noisy;
      delta(k, j) = noisy;
    }
  }
  return DissimilarityData::create(std::move(delta), data.weight_matrix(),
                                   data.indicator_matrix());
}

namespace {

struct CompactGraph {
  std::vector<NodeId> ids;             // sorted original ids
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
};

CompactGraph compact(const GraphInput& g) {
  if (g.edges.empty()) fail("graph has no edges");
  std::set<NodeId> id_set;
  for (const GraphEdge& e : g.edges) {
    if (e.u == e.v) {
      fail("self-loop on node " + std::to_string(e.u));
    }
    if (e.weight && !(*e.weight > 0.0)) {
      fail("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
           ") has non-positive weight");
    }
    id_set.insert(e.u);
    id_set.insert(e.v);
  }
  CompactGraph out;
  out.ids.assign(id_set.begin(), id_set.end());
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < out.ids.size(); ++i) index[out.ids[i]] = i;
  out.adj.resize(out.ids.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const GraphEdge& e : g.edges) {
    std::size_t a = index[e.u];
    std::size_t b = index[e.v];
    if (a > b) std::swap(a, b);
    const double w = e.weight.value_or(1.0);
    const auto key = std::make_pair(a, b);
    if (seen.count(key)) {
      // Tolerate exact repeats; conflicting weights are a data error.
      bool conflict = true;
      for (const auto& [j, k, ww] : out.edges) {
        if (j == a && k == b && ww == w) {
          conflict = false;
          break;
        }
      }
      if (conflict) {
        fail("duplicate edge (" + std::to_string(e.u) + "," +
             std::to_string(e.v) + ") with conflicting weights");
      }
      continue;
    }
    seen.insert(key);
    out.edges.emplace_back(a, b, w);
    out.adj[a].emplace_back(b, w);
    out.adj[b].emplace_back(a, w);
  }
  return out;
}

}  // namespace

DissimilarityData graph_to_dissimilarity(const GraphInput& g) {
  const CompactGraph cg = compact(g);
  const std::size_t n = cg.ids.size();
  if (n < 2) fail("graph needs at least two nodes");

  if (g.mode == GraphMode::ShortestPath) {
    SquareMatrix delta(n, 0.0);
    std::size_t unreachable = 0;
    for (std::size_t src = 0; src < n; ++src) {
      // Dijkstra; weights are path lengths.
      std::vector<double> dist(n, std::numeric_limits<double>::infinity());
      dist[src] = 0.0;
      using Item = std::pair<double, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
      heap.push({0.0, src});
      while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, w] : cg.adj[u]) {
          if (d + w < dist[v]) {
            dist[v] = d + w;
            heap.push({dist[v], v});
          }
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(dist[k])) {
          ++unreachable;
          continue;
        }
        delta(src, k) = dist[k];
      }
    }
    if (unreachable > 0) {
      fail("graph is disconnected: " + std::to_string(unreachable / 2) +
           " unreachable pairs; extract the largest component first");
    }
    return DissimilarityData::from_delta(std::move(delta));
  }

  double shift = 0.0;
  if (g.mode == GraphMode::ConstMinusWeight) {
    double max_w = 0.0;
    for (const auto& [j, k, w] : cg.edges) max_w = std::max(max_w, w);
    shift = max_w + 1.0;
  }
  SquareMatrix delta(n, 1.0);
  SquareMatrix weights(n, 1.0);
  SquareMatrix indicator(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) delta(j, j) = 0.0;
  for (const auto& [j, k, w] : cg.edges) {
    const double d = g.mode == GraphMode::Binary ? 1.0 : shift - w;
    delta(j, k) = d;
    delta(k, j) = d;
    indicator(j, k) = 1.0;
    indicator(k, j) = 1.0;
  }
  return DissimilarityData::create(std::move(delta), std::move(weights),
                                   std::move(indicator));
}

ComponentResult largest_connected_component(const GraphInput& g) {
  const CompactGraph cg = compact(g);
  const std::size_t n = cg.ids.size();
  std::vector<int> comp(n, -1);
  int comp_count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::queue<std::size_t> bfs;
    bfs.push(s);
    comp[s] = comp_count;
    while (!bfs.empty()) {
      const std::size_t u = bfs.front();
      bfs.pop();
      for (const auto& [v, w] : cg.adj[u]) {
        if (comp[v] < 0) {
          comp[v] = comp_count;
          bfs.push(v);
        }
      }
    }
    ++comp_count;
  }
  std::vector<std::size_t> sizes(comp_count, 0);
  for (int c : comp) ++sizes[c];
  // Components are discovered in ascending order of their smallest node id,
  // so the first maximal one wins ties.
  int best = 0;
  for (int c = 1; c < comp_count; ++c) {
    if (sizes[c] > sizes[best]) best = c;
  }
  ComponentResult out;
  std::map<NodeId, NodeId> remap;
  for (std::size_t i = 0; i < n; ++i) {
    if (comp[i] == best) {
      remap[cg.ids[i]] = out.original_ids.size();
      out.original_ids.push_back(cg.ids[i]);
    }
  }
  out.graph.mode = g.mode;
  for (const auto& [j, k, w] : cg.edges) {
    if (comp[j] != best) continue;
    GraphEdge e;
    e.u = remap[cg.ids[j]];
    e.v = remap[cg.ids[k]];
    e.weight = w;
    out.graph.edges.push_back(e);
  }
  return out;
}

DissimilarityData read_dissimilarity_csv(const std::filesystem::path& path) {
  return read_dissimilarity_csv(path, std::nullopt);
}

DissimilarityData read_dissimilarity_csv(
    const std::filesystem::path& path,
    const std::optional<std::filesystem::path>& weights_path) {
  const std::vector<std::string> lines = read_lines(path);
  const std::size_t n = lines.size();
  if (n == 0) fail("empty matrix file " + path.string());
  SquareMatrix delta(n, 0.0);
  SquareMatrix indicator(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto fields = split_csv_line(lines[j]);
    if (fields.size() != n) {
      fail("row " + std::to_string(j) + " of " + path.string() + " has " +
           std::to_string(fields.size()) + " fields, expected " +
           std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::string& tok = fields[k];
      if (j == k) {
        if (!tok.empty() && !is_nan_token(tok) &&
            parse_number(tok, loc(path, j + 1)) != 0.0) {
          fail("nonzero diagonal entry at " + loc(path, j + 1));
        }
        continue;
      }
      if (tok.empty() || is_nan_token(tok)) {
        delta(j, k) = 1.0;  // placeholder, never read
        indicator(j, k) = 0.0;
        continue;
      }
      const double v = parse_number(tok, loc(path, j + 1) + " column " +
                                             std::to_string(k + 1));
      if (v < 0.0) {
        fail("negative dissimilarity at " + loc(path, j + 1) + " column " +
             std::to_string(k + 1));
      }
      delta(j, k) = v;
      indicator(j, k) = 1.0;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (indicator(j, k) != indicator(k, j)) {
        fail("missing-value pattern not symmetric at (" + std::to_string(j) +
             "," + std::to_string(k) + ") in " + path.string());
      }
      if (std::abs(delta(j, k) - delta(k, j)) > 1e-9) {
        fail("matrix not symmetric at (" + std::to_string(j) + "," +
             std::to_string(k) + ") in " + path.string());
      }
      delta(k, j) = delta(j, k);  // upper triangle wins within tolerance
      if (indicator(j, k) != 0.0 && delta(j, k) == 0.0) {
        fail("off-diagonal dissimilarity must be positive at (" +
             std::to_string(j) + "," + std::to_string(k) + ") in " +
             path.string());
      }
    }
  }

  SquareMatrix weights(n, 1.0);
  if (weights_path) {
    const std::vector<std::string> wlines = read_lines(*weights_path);
    if (wlines.size() != n) {
      fail("weights file " + weights_path->string() + " has " +
           std::to_string(wlines.size()) + " rows, expected " +
           std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto fields = split_csv_line(wlines[j]);
      if (fields.size() != n) {
        fail("row " + std::to_string(j) + " of " + weights_path->string() +
             " has " + std::to_string(fields.size()) + " fields, expected " +
             std::to_string(n));
      }
      for (std::size_t k = 0; k < n; ++k) {
        const std::string& tok = fields[k];
        weights(j, k) =
            (tok.empty() || is_nan_token(tok))
                ? 1.0
                : parse_number(tok, loc(*weights_path, j + 1) + " column " +
                                        std::to_string(k + 1));
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      weights(j, j) = 1.0;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (std::abs(weights(j, k) - weights(k, j)) > 1e-9) {
          fail("weights not symmetric at (" + std::to_string(j) + "," +
               std::to_string(k) + ") in " + weights_path->string());
        }
        weights(k, j) = weights(j, k);
      }
    }
  }
  return DissimilarityData::create(std::move(delta), std::move(weights),
                                   std::move(indicator));
}

void write_dissimilarity_csv(const std::filesystem::path& path,
                             const DissimilarityData& data) {
  std::ofstream out = open_out(path);
  const std::size_t n = data.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) out << ',';
      if (j == k) {
        out << '0';
      } else if (data.active(j, k)) {
        out << format_double(data.delta(j, k));
      }
      // missing entries stay blank
    }
    out << '\n';
  }
}

GraphInput read_edge_list(const std::filesystem::path& path, GraphMode mode) {
  const std::vector<std::string> lines = read_lines(path);
  GraphInput g;
  g.mode = mode;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream in(line);
    std::string tu, tv, tw;
    in >> tu >> tv;
    if (tu.empty() || tv.empty()) {
      fail("edge line needs two node ids at " + loc(path, i + 1));
    }
    GraphEdge e;
    try {
      e.u = std::stoull(tu);
      e.v = std::stoull(tv);
    } catch (...) {
      fail("cannot parse node id at " + loc(path, i + 1));
    }
    if (in >> tw) {
      e.weight = parse_number(tw, loc(path, i + 1));
    }
    std::string extra;
    if (in >> extra) {
      fail("unexpected trailing field '" + extra + "' at " + loc(path, i + 1));
    }
    g.edges.push_back(e);
  }
  return g;
}

void write_configuration_csv(const std::filesystem::path& path,
                             const Configuration& config) {
  std::ofstream out = open_out(path);
  out << "index,re,im\n";
  for (std::size_t j = 0; j < config.size(); ++j) {
    out << j << ',' << format_double(config[j].re()) << ','
        << format_double(config[j].im()) << '\n';
  }
}

Configuration read_configuration_csv(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty() || trim(lines[0]) != "index,re,im") {
    fail("configuration file must start with 'index,re,im': " + path.string());
  }
  std::vector<DiskPoint> pts;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != 3) {
      fail("configuration row needs 3 fields at " + loc(path, i + 1));
    }
    const double re = parse_number(fields[1], loc(path, i + 1));
    const double im = parse_number(fields[2], loc(path, i + 1));
    pts.emplace_back(re, im);
  }
  if (pts.empty()) fail("configuration file has no points: " + path.string());
  return Configuration(std::move(pts));
}

void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<IterationRecord>& trace) {
  std::ofstream out = open_out(path);
  out << "t,E,r,g_inf,r_over_rM\n";
  for (const IterationRecord& rec : trace) {
    out << rec.t << ',' << format_double(rec.error) << ','
        << format_double(rec.r) << ',' << format_double(rec.grad_inf) << ','
        << format_double(rec.r_over_r_max) << '\n';
  }
}

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepPoint>& sweep) {
  std::ofstream out = open_out(path);
  out << "a,best_error\n";
  for (const SweepPoint& p : sweep) {
    out << format_double(p.scale_a) << ',' << format_double(p.best_error)
        << '\n';
  }
}

std::vector<SweepPoint> read_sweep_csv(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty() || trim(lines[0]) != "a,best_error") {
    fail("sweep file must start with 'a,best_error': " + path.string());
  }
  std::vector<SweepPoint> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != 2) {
      fail("sweep row needs 2 fields at " + loc(path, i + 1));
    }
    out.push_back({parse_number(fields[0], loc(path, i + 1)),
                   parse_number(fields[1], loc(path, i + 1))});
  }
  return out;
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const std::vector<Configuration>& snapshots) {
  std::ofstream out = open_out(path);
  out << "t,index,re,im\n";
  for (std::size_t t = 0; t < snapshots.size(); ++t) {
    for (std::size_t j = 0; j < snapshots[t].size(); ++j) {
      out << t << ',' << j << ',' << format_double(snapshots[t][j].re()) << ','
          << format_double(snapshots[t][j].im()) << '\n';
    }
  }
}

std::vector<Configuration> read_trajectory_csv(
    const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty() || trim(lines[0]) != "t,index,re,im") {
    fail("trajectory file must start with 't,index,re,im': " + path.string());
  }
  std::map<long, std::vector<DiskPoint>> frames;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != 4) {
      fail("trajectory row needs 4 fields at " + loc(path, i + 1));
    }
    const long t = static_cast<long>(parse_number(fields[0], loc(path, i + 1)));
    const double re = parse_number(fields[2], loc(path, i + 1));
    const double im = parse_number(fields[3], loc(path, i + 1));
    frames[t].emplace_back(re, im);
  }
  std::vector<Configuration> out;
  for (auto& [t, pts] : frames) {
    if (pts.empty()) continue;
    out.emplace_back(std::move(pts));
  }
  return out;
}

}  // namespace hypermds
