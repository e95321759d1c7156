// hypermds command line: embedding into the Poincare disk, the Euclidean
// Sammon baseline, synthetic data, graph ingestion and SVG figures.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hypermds/data_io.hpp"
#include "hypermds/euclidean.hpp"
#include "hypermds/objective.hpp"
#include "hypermds/rng.hpp"
#include "hypermds/solver.hpp"
#include "hypermds/svg.hpp"

namespace fs = std::filesystem;
using namespace hypermds;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct SolverFlags {
  double eps_e = 1e-6;
  double eps_de = 1e-9;
  double eps_g = 1e-9;
  double eps_r = 1e-12;
  int max_iter = 1000;
  double s_max = 10.0;
  double p = 0.1;
  double r0 = 1.0;

  SolverParams params() const {
    SolverParams sp;
    sp.eps_error = eps_e;
    sp.eps_delta_error = eps_de;
    sp.eps_gradient = eps_g;
    sp.eps_step_window = eps_r;
    sp.max_iterations = max_iter;
    sp.s_max = s_max;
    sp.linesearch.p = p;
    sp.linesearch.r0 = r0;
    return sp;
  }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--eps-e", f.eps_e, "Stop when the error drops below this");
  cmd->add_option("--eps-de", f.eps_de,
                  "Stop when the per-iteration decrease drops below this");
  cmd->add_option("--eps-g", f.eps_g, "Stop on gradient inf-norm below this");
  cmd->add_option("--eps-r", f.eps_r, "Stop when the step window r_M shrinks "
                                      "below this");
  cmd->add_option("--max-iter", f.max_iter, "Iteration cap");
  cmd->add_option("--s-max", f.s_max, "Hyperbolic travel window per iteration");
  cmd->add_option("--p", f.p, "Roof slope fraction of the line search");
  cmd->add_option("--r0", f.r0, "Initial line search step guess");
}

ErrorModel make_model(const std::string& name, double scale, bool normalize) {
  if (name == "ads") return ErrorModel::ads(scale, normalize);
  if (name == "rds") return ErrorModel::rds(scale, normalize);
  if (name == "sam") return ErrorModel::sam(scale, normalize);
  throw CLI::ValidationError("--error", "unknown error function '" + name +
                                            "' (expected ads, rds or sam)");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  out << text;
}

fs::path with_suffix(const fs::path& base, const std::string& suffix) {
  fs::path p = base;
  p.replace_filename(base.stem().string() + suffix +
                     base.extension().string());
  return p;
}

void write_replicate_summary(const fs::path& path,
                             const MultiStartResult& ms) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  out << "replicate,final_error,stop_reason,iterations\n";
  for (std::size_t i = 0; i < ms.runs.size(); ++i) {
    out << i << ',' << format_double(ms.runs[i].final_error) << ','
        << to_string(ms.runs[i].stop_reason) << ',' << ms.runs[i].trace.size()
        << '\n';
  }
}

int cmd_embed(const std::string& input, const std::string& weights,
              const std::string& error_name, double scale, bool normalize,
              int replicates, std::optional<std::uint64_t> seed_opt,
              const SolverFlags& flags, const std::string& out_config,
              const std::string& out_trace, const std::string& out_replicates,
              const std::string& out_initial,
              const std::string& out_trajectory) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  std::cout << "seed: " << seed << "\n";
  const DissimilarityData data = read_dissimilarity_csv(
      input, weights.empty() ? std::nullopt
                             : std::optional<fs::path>(weights));
  const ErrorModel model = make_model(error_name, scale, normalize);
  const SolverParams params = flags.params();
  const MultiStartResult ms =
      multi_start(data, model, params, replicates, seed);
  const RunResult& best = ms.best();

  write_configuration_csv(out_config, best.final_config);
  write_trace_csv(out_trace, best.trace);
  const fs::path rep_path = out_replicates.empty()
                                ? with_suffix(out_config, "_replicates")
                                : fs::path(out_replicates);
  write_replicate_summary(rep_path, ms);

  if (!out_initial.empty() || !out_trajectory.empty()) {
    // Re-run the winning replicate to capture its configuration history.
    std::vector<Configuration> snapshots;
    const Configuration init = random_configuration(
        data.size(), Rng::substream(seed, ms.best_index));
    solve(init, data, model, params, nullptr, &snapshots);
    if (!out_initial.empty()) {
      write_configuration_csv(out_initial, snapshots.front());
    }
    if (!out_trajectory.empty()) {
      write_trajectory_csv(out_trajectory, snapshots);
    }
  }

  std::cout << "replicates: " << ms.runs.size() << "\n";
  std::cout << "best replicate: " << ms.best_index << "\n";
  std::cout << "best final error: " << format_double(best.final_error) << "\n";
  std::cout << "stop reason: " << to_string(best.stop_reason) << "\n";
  return best.stop_reason == StopReason::StationaryLineSearch ? kExitNumerical
                                                              : kExitOk;
}

int cmd_sweep(const std::string& input, const std::string& error_name,
              bool normalize, double scale_min, double scale_max,
              int scale_steps, int replicates,
              std::optional<std::uint64_t> seed_opt, const SolverFlags& flags,
              const std::string& out_csv, const std::string& out_svg) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  std::cout << "seed: " << seed << "\n";
  const DissimilarityData data = read_dissimilarity_csv(input);
  const ErrorModel model = make_model(error_name, 1.0, normalize);
  const std::vector<double> grid = log_grid(scale_min, scale_max, scale_steps);
  const std::vector<SweepPoint> sweep =
      scale_sweep(data, model, flags.params(), grid, replicates, seed);
  write_sweep_csv(out_csv, sweep);
  if (!out_svg.empty()) {
    CurvePlot plot;
    for (const SweepPoint& pt : sweep) {
      plot.x.push_back(pt.scale_a);
      plot.y.push_back(pt.best_error);
    }
    write_text(out_svg, render_curve_plot(plot));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (sweep[i].best_error < sweep[best].best_error) best = i;
  }
  std::cout << "best scale: " << format_double(sweep[best].scale_a) << "\n";
  std::cout << "best error: " << format_double(sweep[best].best_error)
            << "\n";
  return kExitOk;
}

int cmd_synth(const std::string& kind, std::size_t n, double noise,
              double radius, std::optional<std::uint64_t> seed_opt,
              const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  std::cout << "seed: " << seed << "\n";
  SyntheticSpec spec;
  if (kind == "euclidean") {
    spec.kind = SyntheticKind::EuclideanPlane;
  } else if (kind == "spherical") {
    spec.kind = SyntheticKind::Sphere;
  } else if (kind == "hyperbolic") {
    spec.kind = SyntheticKind::HyperbolicDisk;
  } else {
    throw CLI::ValidationError("--kind", "unknown kind '" + kind +
                                             "' (expected euclidean, "
                                             "spherical or hyperbolic)");
  }
  spec.n = n;
  spec.noise_e_m = noise;
  spec.sphere_radius = radius;
  spec.seed = seed;
  write_dissimilarity_csv(out, generate_synthetic(spec));
  std::cout << "wrote " << out << " (" << n << " points)\n";
  return kExitOk;
}

int cmd_graph(const std::string& edges, const std::string& mode_name,
              bool largest, const std::string& out) {
  GraphMode mode;
  if (mode_name == "binary") {
    mode = GraphMode::Binary;
  } else if (mode_name == "const-minus-weight") {
    mode = GraphMode::ConstMinusWeight;
  } else if (mode_name == "shortest-path") {
    mode = GraphMode::ShortestPath;
  } else {
    throw CLI::ValidationError("--mode", "unknown mode '" + mode_name + "'");
  }
  GraphInput g = read_edge_list(edges, mode);
  if (largest) {
    ComponentResult comp = largest_connected_component(g);
    std::cout << "largest component: " << comp.original_ids.size()
              << " nodes\n";
    g = std::move(comp.graph);
  }
  const DissimilarityData data = graph_to_dissimilarity(g);
  write_dissimilarity_csv(out, data);
  std::cout << "wrote " << out << " (" << data.size() << " nodes)\n";
  return kExitOk;
}

int cmd_compare(const std::string& input, const std::string& error_name,
                bool normalize, double scale_min, double scale_max,
                int scale_steps, int replicates,
                std::optional<std::uint64_t> seed_opt,
                const SolverFlags& flags, const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  std::cout << "seed: " << seed << "\n";
  const DissimilarityData data = read_dissimilarity_csv(input);
  const ErrorModel model = make_model(error_name, 1.0, normalize);
  const SolverParams params = flags.params();

  const std::vector<double> grid = log_grid(scale_min, scale_max, scale_steps);
  const std::vector<SweepPoint> sweep =
      scale_sweep(data, model, params, grid, replicates, seed);
  std::size_t best = 0;
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (sweep[i].best_error < sweep[best].best_error) best = i;
  }

  const EuclidMultiStartResult euclid =
      euclid_multi_start(data, model, params, replicates, seed);

  std::ofstream rep(out);
  if (!rep) throw std::invalid_argument("cannot write " + out);
  rep << "metric,value\n";
  rep << "pd_best_error," << format_double(sweep[best].best_error) << '\n';
  rep << "pd_best_scale," << format_double(sweep[best].scale_a) << '\n';
  rep << "euclid_best_error," << format_double(euclid.best().final_error)
      << '\n';
  rep << "ratio_euclid_over_pd,"
      << format_double(euclid.best().final_error / sweep[best].best_error)
      << '\n';
  std::cout << "pd best error: " << format_double(sweep[best].best_error)
            << " at a=" << format_double(sweep[best].scale_a) << "\n";
  std::cout << "euclid best error: "
            << format_double(euclid.best().final_error) << "\n";
  std::cout << "ratio euclid/pd: "
            << format_double(euclid.best().final_error /
                             sweep[best].best_error)
            << "\n";
  return kExitOk;
}

int cmd_plot_disk(const std::string& input, const std::string& initial,
                  const std::string& trajectory, const std::string& out) {
  DiskPlot plot;
  const Configuration config = read_configuration_csv(input);
  for (const DiskPoint& p : config) plot.points.push_back(p.value());
  if (!initial.empty()) {
    const Configuration init = read_configuration_csv(initial);
    for (const DiskPoint& p : init) plot.initial_points.push_back(p.value());
  }
  if (!trajectory.empty()) {
    const std::vector<Configuration> frames = read_trajectory_csv(trajectory);
    if (!frames.empty()) {
      const std::size_t n = frames.front().size();
      plot.trajectories.assign(n, {});
      for (const Configuration& frame : frames) {
        for (std::size_t j = 0; j < n && j < frame.size(); ++j) {
          plot.trajectories[j].push_back(frame[j].value());
        }
      }
      if (plot.initial_points.empty()) {
        for (const DiskPoint& p : frames.front()) {
          plot.initial_points.push_back(p.value());
        }
      }
    }
  }
  write_text(out, render_disk_plot(plot));
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_plot_curve(const std::string& input, const std::string& out) {
  const std::vector<SweepPoint> sweep = read_sweep_csv(input);
  CurvePlot plot;
  for (const SweepPoint& pt : sweep) {
    plot.x.push_back(pt.scale_a);
    plot.y.push_back(pt.best_error);
  }
  write_text(out, render_curve_plot(plot));
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric multidimensional scaling in the Poincare disk"};
  app.require_subcommand(1);

  // embed
  auto* embed = app.add_subcommand("embed", "Embed a dissimilarity matrix");
  std::string in_matrix, in_weights, error_name = "sam";
  std::string out_config, out_trace, out_replicates, out_initial,
      out_trajectory;
  double scale = 1.0;
  bool normalize = false;
  int replicates = 20;
  std::optional<std::uint64_t> seed;
  SolverFlags flags;
  embed->add_option("--input", in_matrix, "Dissimilarity matrix CSV")
      ->required();
  embed->add_option("--weights", in_weights, "Optional weights matrix CSV");
  embed->add_option("--error", error_name, "Error function: ads, rds or sam");
  embed->add_option("--scale", scale, "Dissimilarity scaling factor a");
  embed->add_flag("--normalize", normalize, "Divide by the number of pairs");
  embed->add_option("--replicates", replicates, "Number of restarts");
  embed->add_option("--seed", seed, "Random seed (echoed when derived)");
  add_solver_flags(embed, flags);
  embed->add_option("--out-config", out_config, "Best configuration CSV")
      ->required();
  embed->add_option("--out-trace", out_trace, "Best-run trace CSV")
      ->required();
  embed->add_option("--out-replicates", out_replicates,
                    "Per-replicate summary CSV (default: derived from "
                    "--out-config)");
  embed->add_option("--out-initial", out_initial,
                    "Initial configuration of the best run");
  embed->add_option("--out-trajectory", out_trajectory,
                    "Per-iteration configurations of the best run");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Sweep the scaling factor a");
  std::string sw_in, sw_error = "sam", sw_out, sw_svg;
  double sw_min = 0.01, sw_max = 10.0;
  int sw_steps = 40, sw_replicates = 70;
  bool sw_normalize = false;
  std::optional<std::uint64_t> sw_seed;
  SolverFlags sw_flags;
  sweep->add_option("--input", sw_in, "Dissimilarity matrix CSV")->required();
  sweep->add_option("--error", sw_error, "Error function: ads, rds or sam");
  sweep->add_flag("--normalize", sw_normalize,
                  "Divide by the number of pairs");
  sweep->add_option("--scale-min", sw_min, "Smallest scaling factor");
  sweep->add_option("--scale-max", sw_max, "Largest scaling factor");
  sweep->add_option("--scale-steps", sw_steps, "Number of grid points");
  sweep->add_option("--replicates", sw_replicates, "Restarts per grid point");
  sweep->add_option("--seed", sw_seed, "Random seed");
  add_solver_flags(sweep, sw_flags);
  sweep->add_option("--out", sw_out, "Sweep CSV output")->required();
  sweep->add_option("--svg", sw_svg, "Optional SVG curve output");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate synthetic data");
  std::string sy_kind, sy_out;
  std::size_t sy_n = 20;
  double sy_noise = 0.0, sy_radius = 1.0;
  std::optional<std::uint64_t> sy_seed;
  synth->add_option("--kind", sy_kind,
                    "Surface: euclidean, spherical or hyperbolic")
      ->required();
  synth->add_option("--n", sy_n, "Number of points")->required();
  synth->add_option("--noise", sy_noise, "Relative noise level in [0,1)");
  synth->add_option("--radius", sy_radius, "Sphere radius");
  synth->add_option("--seed", sy_seed, "Random seed");
  synth->add_option("--out", sy_out, "Matrix CSV output")->required();

  // graph
  auto* graph = app.add_subcommand("graph", "Convert an edge list");
  std::string gr_edges, gr_mode, gr_out;
  bool gr_largest = false;
  graph->add_option("--edges", gr_edges, "Edge list file")->required();
  graph
      ->add_option("--mode", gr_mode,
                   "binary, const-minus-weight or shortest-path")
      ->required();
  graph->add_flag("--largest-component", gr_largest,
                  "Restrict to the largest connected component");
  graph->add_option("--out", gr_out, "Matrix CSV output")->required();

  // compare
  auto* compare =
      app.add_subcommand("compare", "Disk sweep vs Euclidean baseline");
  std::string cp_in, cp_error = "sam", cp_out;
  double cp_min = 0.01, cp_max = 10.0;
  int cp_steps = 40, cp_replicates = 70;
  bool cp_normalize = false;
  std::optional<std::uint64_t> cp_seed;
  SolverFlags cp_flags;
  compare->add_option("--input", cp_in, "Dissimilarity matrix CSV")
      ->required();
  compare->add_option("--error", cp_error, "Error function: ads, rds or sam");
  compare->add_flag("--normalize", cp_normalize,
                    "Divide by the number of pairs");
  compare->add_option("--scale-min", cp_min, "Smallest scaling factor");
  compare->add_option("--scale-max", cp_max, "Largest scaling factor");
  compare->add_option("--scale-steps", cp_steps, "Number of grid points");
  compare->add_option("--replicates", cp_replicates, "Restarts per run");
  compare->add_option("--seed", cp_seed, "Random seed");
  add_solver_flags(compare, cp_flags);
  compare->add_option("--out", cp_out, "Report CSV output")->required();

  // plot
  auto* plot = app.add_subcommand("plot", "Render an SVG figure");
  plot->require_subcommand(1);
  auto* plot_disk = plot->add_subcommand("disk", "Disk scatter figure");
  std::string pd_in, pd_initial, pd_traj, pd_out;
  plot_disk->add_option("--input", pd_in, "Configuration CSV")->required();
  plot_disk->add_option("--initial", pd_initial,
                        "Initial configuration CSV (hollow markers)");
  plot_disk->add_option("--trajectory", pd_traj,
                        "Trajectory CSV (t,index,re,im)");
  plot_disk->add_option("--out", pd_out, "SVG output")->required();
  auto* plot_curve = plot->add_subcommand("curve", "Sweep curve figure");
  std::string pc_in, pc_out;
  plot_curve->add_option("--input", pc_in, "Sweep CSV (a,best_error)")
      ->required();
  plot_curve->add_option("--out", pc_out, "SVG output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (embed->parsed()) {
      return cmd_embed(in_matrix, in_weights, error_name, scale, normalize,
                       replicates, seed, flags, out_config, out_trace,
                       out_replicates, out_initial, out_trajectory);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sw_in, sw_error, sw_normalize, sw_min, sw_max,
                       sw_steps, sw_replicates, sw_seed, sw_flags, sw_out,
                       sw_svg);
    }
    if (synth->parsed()) {
      return cmd_synth(sy_kind, sy_n, sy_noise, sy_radius, sy_seed, sy_out);
    }
    if (graph->parsed()) {
      return cmd_graph(gr_edges, gr_mode, gr_largest, gr_out);
    }
    if (compare->parsed()) {
      return cmd_compare(cp_in, cp_error, cp_normalize, cp_min, cp_max,
                         cp_steps, cp_replicates, cp_seed, cp_flags, cp_out);
    }
    if (plot->parsed()) {
      if (plot_disk->parsed()) {
        return cmd_plot_disk(pd_in, pd_initial, pd_traj, pd_out);
      }
      return cmd_plot_curve(pc_in, pc_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
