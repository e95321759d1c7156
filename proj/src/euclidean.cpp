#include "hypermds/euclidean.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "hypermds/parallel.hpp"
#include "hypermds/rng.hpp"

namespace hypermds {

double euclid_distance(PlanePoint p1, PlanePoint p2) {
  return std::hypot(p1.x - p2.x, p1.y - p2.y);
}

namespace {

/// Mirror of the disk solver's compiled pairwise objective with the planar
/// distance. Gradient of d wrt point j is (p_j - p_k)/d.
class PlaneObjective {
 public:
  PlaneObjective(const DissimilarityData& data, const ErrorModel& model)
      : general_(to_general(model, data)), n_(data.size()) {
    prefactor_ = model.normalize_per_pair
                     ? 2.0 / (static_cast<double>(n_) * n_ - n_)
                     : 1.0;
    prefactor_ *= general_.general_c;
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = j + 1; k < n_; ++k) {
        if (!data.active(j, k)) continue;
        const double coeff = general_.general_cjk(j, k);
        if (coeff == 0.0) continue;
        terms_.push_back({j, k, coeff, model.scale_a * data.delta(j, k)});
      }
    }
  }

  std::size_t size() const { return n_; }

  double error(const PlaneConfiguration& config) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
      const double diff =
          euclid_distance(config[t.j], config[t.k]) - t.target;
      sum += t.coeff * diff * diff;
    }
    return prefactor_ * sum;
  }

  double error_and_gradient(const PlaneConfiguration& config,
                            std::vector<Complex>& grad_out) const {
    grad_out.assign(n_, Complex(0.0, 0.0));
    double sum = 0.0;
    for (const auto& t : terms_) {
      const double dx = config[t.j].x - config[t.k].x;
      const double dy = config[t.j].y - config[t.k].y;
      const double d = std::hypot(dx, dy);
      if (d == 0.0) {
        throw DegenerateConfigurationError(
            "coincident plane points (" + std::to_string(t.j) + "," +
            std::to_string(t.k) + ") on an active pair; gradient undefined");
      }
      const double diff = d - t.target;
      sum += t.coeff * diff * diff;
      const double scale = 2.0 * t.coeff * diff / d;
      grad_out[t.j] += Complex(scale * dx, scale * dy);
      grad_out[t.k] -= Complex(scale * dx, scale * dy);
    }
    for (Complex& g : grad_out) g *= prefactor_;
    return prefactor_ * sum;
  }

 private:
  struct Term {
    std::size_t j;
    std::size_t k;
    double coeff;
    double target;
  };

  ErrorModel general_;
  std::size_t n_ = 0;
  double prefactor_ = 1.0;
  std::vector<Term> terms_;
};

PlaneConfiguration plane_step(const PlaneConfiguration& config,
                              const std::vector<Complex>& grad, double r) {
  PlaneConfiguration moved(config.size());
  for (std::size_t j = 0; j < config.size(); ++j) {
    moved[j] = {config[j].x - r * grad[j].real(),
                config[j].y - r * grad[j].imag()};
  }
  return moved;
}

double inf_norm(const std::vector<Complex>& grad) {
  double m = 0.0;
  for (const Complex& g : grad) m = std::max(m, std::abs(g));
  return m;
}

void check_plane_inputs(const PlaneConfiguration& init,
                        const DissimilarityData& data) {
  if (init.size() != data.size()) {
    throw std::invalid_argument("initial configuration size does not match "
                                "data size");
  }
  for (const PlanePoint& p : init) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("plane point has non-finite coordinates");
    }
  }
  for (std::size_t j = 0; j < init.size(); ++j) {
    for (std::size_t k = j + 1; k < init.size(); ++k) {
      if (data.active(j, k) && init[j].x == init[k].x &&
          init[j].y == init[k].y) {
        throw std::invalid_argument(
            "initial configuration has coincident points (" +
            std::to_string(j) + "," + std::to_string(k) +
            ") on an active pair");
      }
    }
  }
}

}  // namespace

double euclid_embedding_error(const PlaneConfiguration& config,
                              const DissimilarityData& data,
                              const ErrorModel& model) {
  if (config.size() != data.size()) {
    throw std::invalid_argument("configuration size does not match data");
  }
  return PlaneObjective(data, model).error(config);
}

std::vector<Complex> euclid_gradient(const PlaneConfiguration& config,
                                     const DissimilarityData& data,
                                     const ErrorModel& model) {
  if (config.size() != data.size()) {
    throw std::invalid_argument("configuration size does not match data");
  }
  std::vector<Complex> g;
  PlaneObjective(data, model).error_and_gradient(config, g);
  return g;
}

EuclidRunResult euclid_solve(const PlaneConfiguration& init,
                             const DissimilarityData& data,
                             const ErrorModel& model,
                             const SolverParams& params) {
  params.validate();
  model.validate();
  check_plane_inputs(init, data);

  const PlaneObjective objective(data, model);
  PlaneConfiguration z = init;
  double prev_error = std::numeric_limits<double>::infinity();
  double r_warm = params.linesearch.r0;

  EuclidRunResult result{init, 0.0, StopReason::IterationCap, {}};
  std::vector<Complex> grad;
  for (int t = 1;; ++t) {
    const double error = objective.error_and_gradient(z, grad);
    const double ginf = inf_norm(grad);
    const double r_max = ginf > 0.0
                             ? params.s_max / ginf
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
        return objective.error(plane_step(z, grad, r));
      };
      double qprime0 = 0.0;
      for (const Complex& g : grad) qprime0 -= std::norm(g);
      const LineSearchResult found = detail::binary_roof_search(
          q, error, qprime0, params.linesearch.p, r_warm, r_max, nullptr);
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
      z = plane_step(z, grad, found.r);
      result.trace.push_back({t, error, found.r, ginf, found.r / r_max});
      r_warm = found.r;
      continue;
    }
    result.final_config = z;
    result.final_error = error;
    return result;
  }
}

EuclidMultiStartResult euclid_multi_start(const DissimilarityData& data,
                                          const ErrorModel& model,
                                          const SolverParams& params,
                                          int replicates, std::uint64_t seed) {
  if (replicates < 1) {
    throw std::invalid_argument("replicates must be at least 1");
  }
  std::vector<std::optional<EuclidRunResult>> slots(replicates);
  detail::parallel_for_jobs(replicates, [&](int i) {
    const PlaneConfiguration init =
        random_plane_configuration(data.size(), Rng::substream(seed, i));
    slots[i] = euclid_solve(init, data, model, params);
  });
  EuclidMultiStartResult out;
  out.runs.reserve(replicates);
  for (auto& slot : slots) out.runs.push_back(std::move(*slot));
  for (std::size_t i = 1; i < out.runs.size(); ++i) {
    if (out.runs[i].final_error < out.runs[out.best_index].final_error) {
      out.best_index = i;
    }
  }
  return out;
}

PlaneConfiguration random_plane_configuration(std::size_t n,
                                              std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("configuration needs at least one point");
  }
  Rng rng(seed);
  PlaneConfiguration pts;
  pts.reserve(n);
  constexpr double kMinSeparation = 1e-6;
  while (pts.size() < n) {
    const PlanePoint candidate{rng.next_double(), rng.next_double()};
    bool separated = true;
    for (const PlanePoint& p : pts) {
      if (euclid_distance(p, candidate) < kMinSeparation) {
        separated = false;
        break;
      }
    }
    if (separated) pts.push_back(candidate);
  }
  return pts;
}

}  // namespace hypermds
