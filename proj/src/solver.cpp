#include "hypermds/solver.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "hypermds/parallel.hpp"
#include "hypermds/rng.hpp"

namespace hypermds {

void SolverParams::validate() const {
  if (!(eps_error > 0.0) || !(eps_delta_error > 0.0) ||
      !(eps_gradient > 0.0) || !(eps_step_window > 0.0)) {
    throw std::invalid_argument("all stopping tolerances must be positive");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("iteration cap must be at least 1");
  }
  if (!(s_max > 0.0)) {
    throw std::invalid_argument("hyperbolic window s_max must be positive");
  }
  linesearch.validate();
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::ErrorBelowEps: return "ERROR_BELOW_EPS";
    case StopReason::SlowProgress: return "SLOW_PROGRESS";
    case StopReason::SmallGradient: return "SMALL_GRADIENT";
    case StopReason::SmallStepWindow: return "SMALL_STEP_WINDOW";
    case StopReason::IterationCap: return "ITERATION_CAP";
    case StopReason::StationaryLineSearch: return "STATIONARY_LINESEARCH";
  }
  return "UNKNOWN";
}

namespace {

void check_inputs(const Configuration& init, const DissimilarityData& data) {
  if (init.size() != data.size()) {
    throw std::invalid_argument("initial configuration size " +
                                std::to_string(init.size()) +
                                " does not match data size " +
                                std::to_string(data.size()));
  }
  for (std::size_t j = 0; j < init.size(); ++j) {
    for (std::size_t k = j + 1; k < init.size(); ++k) {
      if (data.active(j, k) && init[j].value() == init[k].value()) {
        throw std::invalid_argument(
            "initial configuration has coincident points (" +
            std::to_string(j) + "," + std::to_string(k) +
            ") on an active pair");
      }
    }
  }
}

}  // namespace

RunResult solve(const Configuration& init, const DissimilarityData& data,
                const ErrorModel& model, const SolverParams& params,
                std::vector<double>* probe_log,
                std::vector<Configuration>* snapshots) {
  params.validate();
  model.validate();
  check_inputs(init, data);

  const detail::CompiledObjective objective(data, model);
  Configuration z = init;
  if (snapshots) snapshots->push_back(z);
  double prev_error = std::numeric_limits<double>::infinity();
  double r_warm = params.linesearch.r0;
  const double window = std::tanh(0.5 * params.s_max);

  RunResult result{init, 0.0, StopReason::IterationCap, {}};
  std::vector<Complex> grad_components;
  for (int t = 1;; ++t) {
    const double error = objective.error_and_gradient(z, grad_components);
    const Gradient grad(std::move(grad_components));
    const double ginf = grad.inf_norm();
    const double r_max = ginf > 0.0
                             ? window / ginf
                             : std::numeric_limits<double>::infinity();

    if (error < params.eps_error) {
      result.stop_reason = StopReason::ErrorBelowEps;
    } else if (prev_error - error < params.eps_delta_error) {
      result.stop_reason = StopReason::SlowProgress;
    } else if (ginf < params.eps_gradient) {
      result.stop_reason = StopReason::SmallGradient;
    } else if (r_max < params.eps_step_window) {
      result.stop_reason = StopReason::SmallStepWindow;
    } else if (t > params.max_iterations) {
      result.stop_reason = StopReason::IterationCap;
    } else {
      prev_error = error;
      const auto q = [&](double r) {
        return objective.error(apply_step(z, grad, r));
      };
      double qprime0 = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        qprime0 += (std::norm(z[j].value()) - 1.0) * std::norm(grad[j]);
      }
      const LineSearchResult found = detail::binary_roof_search(
          q, error, qprime0, params.linesearch.p, r_warm, r_max, probe_log);
      if (!found.ok) {
        result.stop_reason = StopReason::StationaryLineSearch;
        result.final_config = z;
        result.final_error = error;
        return result;
      }
      if (params.validate_linesearch) {
        const auto acceptable = [&](double rr) {
          return rr < r_max &&
                 q(rr) < roof_value(error, qprime0, params.linesearch.p, rr);
        };
        if (!(found.r > 0.0) || !acceptable(found.r) ||
            acceptable(2.0 * found.r)) {
          throw std::logic_error("line search acceptance contract violated");
        }
      }
      z = apply_step(z, grad, found.r);
      if (snapshots) snapshots->push_back(z);
      result.trace.push_back({t, error, found.r, ginf, found.r / r_max});
      r_warm = found.r;
      grad_components = std::vector<Complex>();
      continue;
    }
    result.final_config = z;
    result.final_error = error;
    return result;
  }
}

unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("HYPERMDS_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < n) {
      n = static_cast<unsigned>(cap);
    }
  }
  return n;
}

MultiStartResult multi_start(const DissimilarityData& data,
                             const ErrorModel& model,
                             const SolverParams& params, int replicates,
                             std::uint64_t seed) {
  if (replicates < 1) {
    throw std::invalid_argument("replicates must be at least 1");
  }
  std::vector<std::optional<RunResult>> slots(replicates);
  detail::parallel_for_jobs(replicates, [&](int i) {
    const Configuration init =
        random_configuration(data.size(), Rng::substream(seed, i));
    slots[i] = solve(init, data, model, params);
  });
  MultiStartResult out;
  out.runs.reserve(replicates);
  for (auto& slot : slots) out.runs.push_back(std::move(*slot));
  for (std::size_t i = 1; i < out.runs.size(); ++i) {
    if (out.runs[i].final_error < out.runs[out.best_index].final_error) {
      out.best_index = i;
    }
  }
  return out;
}

std::vector<SweepPoint> scale_sweep(const DissimilarityData& data,
                                    const ErrorModel& model_template,
                                    const SolverParams& params,
                                    const std::vector<double>& a_grid,
                                    int replicates, std::uint64_t seed) {
  if (a_grid.empty()) {
    throw std::invalid_argument("scaling grid must not be empty");
  }
  std::vector<SweepPoint> out;
  out.reserve(a_grid.size());
  for (double a : a_grid) {
    if (!(a > 0.0)) {
      throw std::invalid_argument("scaling factors must be positive");
    }
    ErrorModel model = model_template;
    model.scale_a = a;
    const MultiStartResult ms =
        multi_start(data, model, params, replicates, seed);
    out.push_back({a, ms.best().final_error});
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int steps) {
  if (!(lo > 0.0) || !(hi > lo) || steps < 1) {
    throw std::invalid_argument("log grid needs 0 < lo < hi and steps >= 1");
  }
  std::vector<double> grid;
  grid.reserve(steps);
  if (steps == 1) {
    grid.push_back(lo);
    return grid;
  }
  const double f = std::log(hi / lo) / (steps - 1);
  for (int i = 0; i < steps; ++i) {
    grid.push_back(lo * std::exp(f * i));
  }
  grid.back() = hi;
  return grid;
}

Configuration random_configuration(std::size_t n, std::uint64_t seed,
                                   double radius_bound) {
  if (n < 1) {
    throw std::invalid_argument("configuration needs at least one point");
  }
  if (!(radius_bound > 0.0) || radius_bound > 1.0 - kBoundaryGuard) {
    throw std::invalid_argument("radius bound must lie in (0, 1)");
  }
  Rng rng(seed);
  std::vector<DiskPoint> pts;
  pts.reserve(n);
  constexpr double kMinSeparation = 1e-6;
  const double two_pi = 8.0 * std::atan(1.0);
  while (pts.size() < n) {
    const double angle = rng.uniform(0.0, two_pi);
    const double radius = rng.uniform(0.0, radius_bound);
    const DiskPoint candidate(radius * std::cos(angle),
                              radius * std::sin(angle));
    bool separated = true;
    for (const DiskPoint& p : pts) {
      if (hyp_distance(p, candidate) < kMinSeparation) {
        separated = false;
        break;
      }
    }
    if (separated) pts.push_back(candidate);
  }
  return Configuration(std::move(pts));
}

}  // namespace hypermds
