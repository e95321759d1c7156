#pragma once

#include <functional>
#include <vector>

#include "hypermds/objective.hpp"

namespace hypermds {

struct LineSearchParams {
  double p = 0.1;   // roof slope fraction, in (0, 1)
  double r0 = 1.0;  // initial step guess

  void validate() const;
};

/// One-dimensional restriction of the embedding error to the bundle of
/// steepest-descent geodesics: q(r) = E of the configuration moved by -r g.
class LineProbe {
 public:
  LineProbe(const Configuration& base, const Gradient& g,
            const DissimilarityData& data, const ErrorModel& model);

  const Configuration& base() const { return *base_; }
  const Gradient& grad() const { return *g_; }
  const detail::CompiledObjective& objective() const { return compiled_; }

 private:
  const Configuration* base_;
  const Gradient* g_;
  detail::CompiledObjective compiled_;
};

double q_eval(const LineProbe& probe, double r);

/// Slope of q at r: the inner product of the path derivative
///   M_j'(r) = g_j (|z_j|^2 - 1) / (1 - r g_j conj(z_j))^2
/// with the error gradient evaluated at the moved configuration.
double q_slope(const LineProbe& probe, double r);

/// Roof function q0 + p * qprime0 * r.
double roof_value(double q0, double qprime0, double p, double r);

struct LineSearchResult {
  double r = 0.0;
  bool ok = false;  // false: r underflowed the 1e-30 floor without acceptance
  int evals = 0;    // number of q evaluations performed
};

/// Floor below which the search reports a numerically stationary point.
inline constexpr double kLineSearchFloor = 1e-30;

/// Doubling/halving search for a step with sufficient decrease:
/// returns r with r < r_M and q(r) < roof(r), such that 2r violates at
/// least one of the two. Every probed r is r0 times a power of two.
/// If probe_log is non-null every probed r is appended to it.
LineSearchResult hyp_line_search(const LineProbe& probe,
                                 const LineSearchParams& params, double r_M,
                                 std::vector<double>* probe_log = nullptr);

namespace detail {

/// Geometry-independent core of the search; q must be safe to evaluate for
/// any r in (0, r_M).
LineSearchResult binary_roof_search(const std::function<double(double)>& q,
                                    double q0, double qprime0, double p,
                                    double r0, double r_M,
                                    std::vector<double>* probe_log);

}  // namespace detail
}  // namespace hypermds
