#pragma once

#include <cstdint>
#include <vector>

#include "hypermds/linesearch.hpp"
#include "hypermds/objective.hpp"

namespace hypermds {

struct SolverParams {
  double eps_error = 1e-6;       // stop when E drops below this
  double eps_delta_error = 1e-9; // stop when per-iteration decrease is below
  double eps_gradient = 1e-9;    // stop on ||g||_inf below
  double eps_step_window = 1e-12;// stop when r_M shrinks below
  int max_iterations = 1000;
  double s_max = 10.0;           // hyperbolic window per iteration
  LineSearchParams linesearch;

  // Re-checks the line search acceptance contract after every iteration
  // (costs extra q evaluations); meant for test builds.
  bool validate_linesearch = false;

  void validate() const;
};

enum class StopReason {
  ErrorBelowEps,
  SlowProgress,
  SmallGradient,
  SmallStepWindow,
  IterationCap,
  StationaryLineSearch,
};

const char* to_string(StopReason reason);

struct IterationRecord {
  int t = 0;
  double error = 0.0;      // E at the start of the iteration
  double r = 0.0;          // accepted step parameter
  double grad_inf = 0.0;   // ||g||_inf at the start of the iteration
  double r_over_r_max = 0.0;
};

/// Result of one descent run; trace holds one record per completed
/// iteration, with strictly decreasing error values.
template <class ConfigT>
struct BasicRunResult {
  ConfigT final_config;
  double final_error = 0.0;
  StopReason stop_reason = StopReason::IterationCap;
  std::vector<IterationRecord> trace;
};

using RunResult = BasicRunResult<Configuration>;

/// Steepest descent along hyperbolic geodesics with the doubling/halving
/// line search. The step guess is warm-started from the previous iteration.
/// probe_log, when given, receives every step parameter probed by the line
/// search; snapshots receives the configuration before the first iteration
/// and after every accepted step.
RunResult solve(const Configuration& init, const DissimilarityData& data,
                const ErrorModel& model, const SolverParams& params,
                std::vector<double>* probe_log = nullptr,
                std::vector<Configuration>* snapshots = nullptr);

struct MultiStartResult {
  std::vector<RunResult> runs;
  std::size_t best_index = 0;

  const RunResult& best() const { return runs[best_index]; }
};

/// Repeats solve from seeded random initial configurations; replicate i
/// draws from an independent substream of (seed, i). Replicates may run on
/// several threads (capped by HYPERMDS_THREADS); the result is identical
/// either way, with ties broken by lowest replicate index.
MultiStartResult multi_start(const DissimilarityData& data,
                             const ErrorModel& model,
                             const SolverParams& params, int replicates,
                             std::uint64_t seed);

struct SweepPoint {
  double scale_a = 0.0;
  double best_error = 0.0;
};

/// Runs multi_start for every scaling factor in a_grid (each with the same
/// replicate substreams) and reports the best error per factor.
std::vector<SweepPoint> scale_sweep(const DissimilarityData& data,
                                    const ErrorModel& model_template,
                                    const SolverParams& params,
                                    const std::vector<double>& a_grid,
                                    int replicates, std::uint64_t seed);

/// Log-spaced grid of `steps` points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int steps);

/// n points with angle uniform on [0, 2pi) and Euclidean radius uniform on
/// [0, radius_bound]; pairwise hyperbolic separation at least 1e-6 is
/// enforced by resampling.
Configuration random_configuration(std::size_t n, std::uint64_t seed,
                                   double radius_bound = 0.5);

/// Worker count used for replicate fan-out: HYPERMDS_THREADS if set,
/// otherwise the hardware concurrency.
unsigned worker_count();

}  // namespace hypermds
