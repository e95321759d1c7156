#include "hypermds/linesearch.hpp"

#include <cmath>
#include <stdexcept>

namespace hypermds {

void LineSearchParams::validate() const {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument("roof slope fraction p must be in (0,1)");
  }
  if (!(r0 > 0.0) || !std::isfinite(r0)) {
    throw std::invalid_argument("initial step guess r0 must be positive");
  }
}

LineProbe::LineProbe(const Configuration& base, const Gradient& g,
                     const DissimilarityData& data, const ErrorModel& model)
    : base_(&base), g_(&g), compiled_(data, model) {
  if (base.size() != g.size()) {
    throw std::invalid_argument("gradient size does not match configuration");
  }
  if (!(g.inf_norm() > 0.0)) {
    throw std::invalid_argument("line probe requires a nonzero gradient");
  }
}

double q_eval(const LineProbe& probe, double r) {
  return probe.objective().error(apply_step(probe.base(), probe.grad(), r));
}

double q_slope(const LineProbe& probe, double r) {
  const Configuration moved = apply_step(probe.base(), probe.grad(), r);
  std::vector<Complex> grad_moved;
  probe.objective().error_and_gradient(moved, grad_moved);
  double slope = 0.0;
  for (std::size_t j = 0; j < moved.size(); ++j) {
    const Complex gj = probe.grad()[j];
    const Complex z = probe.base()[j].value();
    const Complex den = 1.0 - r * gj * std::conj(z);
    const Complex mprime = gj * (std::norm(z) - 1.0) / (den * den);
    // Re(M') Re(gE) + Im(M') Im(gE)
    slope += mprime.real() * grad_moved[j].real() +
             mprime.imag() * grad_moved[j].imag();
  }
  return slope;
}

double roof_value(double q0, double qprime0, double p, double r) {
  return q0 + p * qprime0 * r;
}

namespace detail {

LineSearchResult binary_roof_search(const std::function<double(double)>& q,
                                    double q0, double qprime0, double p,
                                    double r0, double r_M,
                                    std::vector<double>* probe_log) {
  LineSearchResult result;
  const auto acceptable = [&](double r) {
    if (!(r < r_M)) return false;
    if (probe_log) probe_log->push_back(r);
    ++result.evals;
    return q(r) < roof_value(q0, qprime0, p, r);
  };

  double r = r0;
  if (acceptable(r)) {
    // Expansion: double until the window or the decrease condition breaks;
    // the last value probed before the break is the answer.
    for (;;) {
      const double next = 2.0 * r;
      if (!acceptable(next)) break;
      r = next;
    }
    result.r = r;
    result.ok = true;
    return result;
  }
  // Reduction: halve until both the window and the decrease condition hold.
  for (;;) {
    r *= 0.5;
    if (r < kLineSearchFloor) {
      return result;  // numerically stationary
    }
    if (acceptable(r)) {
      result.r = r;
      result.ok = true;
      return result;
    }
  }
}

}  // namespace detail

LineSearchResult hyp_line_search(const LineProbe& probe,
                                 const LineSearchParams& params, double r_M,
                                 std::vector<double>* probe_log) {
  params.validate();
  if (!(r_M > 0.0)) {
    throw std::invalid_argument("line search window r_M must be positive");
  }
  const double q0 = probe.objective().error(probe.base());
  // q'(0) = sum_j (|z_j|^2 - 1) |g_j|^2, strictly negative here.
  double qprime0 = 0.0;
  for (std::size_t j = 0; j < probe.base().size(); ++j) {
    qprime0 += (std::norm(probe.base()[j].value()) - 1.0) *
               std::norm(probe.grad()[j]);
  }
  const auto q = [&](double r) { return q_eval(probe, r); };
  return detail::binary_roof_search(q, q0, qprime0, params.p, params.r0, r_M,
                                    probe_log);
}

}  // namespace hypermds
