#include "hypermds/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace hypermds {

namespace {

Complex clamp_to_disk(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument("disk point has non-finite coordinates");
  }
  const double limit = 1.0 - kBoundaryGuard;
  const double mag = std::abs(z);
  if (mag > limit) {
    z *= limit / mag;
  }
  return z;
}

}  // namespace

DiskPoint::DiskPoint(double re, double im) : z_(clamp_to_disk({re, im})) {}

DiskPoint::DiskPoint(Complex z) : z_(clamp_to_disk(z)) {}

Direction::Direction(Complex v) {
  const double mag = std::abs(v);
  if (!std::isfinite(mag) || mag < 1e-15) {
    throw std::invalid_argument("direction vector too small to normalize");
  }
  g_ = v / mag;
}

MobiusTransform::MobiusTransform(Complex a, Complex b) : a_(a), b_(b) {
  const double det = std::norm(a) - std::norm(b);
  if (!std::isfinite(det) || det < 1e-15) {
    throw std::invalid_argument(
        "Mobius transform must satisfy |a|^2 - |b|^2 > 0 (not within 1e-15 "
        "of zero) to preserve the disk");
  }
}

Configuration::Configuration(std::vector<DiskPoint> points)
    : points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("configuration needs at least one point");
  }
}

double hyp_distance(DiskPoint z1, DiskPoint z2) {
  const Complex a = z1.value();
  const Complex b = z2.value();
  const double num = std::abs(a - b);
  if (num == 0.0) return 0.0;
  const double den = std::abs(1.0 - a * std::conj(b));
  double m = num / den;
  // The guard keeps m < 1 analytically; rounding can still produce 1.0 for
  // two nearly antipodal points sitting on the guard radius.
  if (m >= 1.0) m = std::nextafter(1.0, 0.0);
  return 2.0 * std::atanh(m);
}

DiskPoint mobius_apply(const MobiusTransform& t, DiskPoint z) {
  const Complex w = z.value();
  return DiskPoint((t.a() * w + t.b()) /
                   (std::conj(t.b()) * w + std::conj(t.a())));
}

DiskPoint geodesic_move(DiskPoint z0, Direction gamma, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("travel distance must be finite and >= 0");
  }
  const Complex w = gamma.value() * std::tanh(0.5 * s);
  const Complex z = z0.value();
  return DiskPoint((w + z) / (std::conj(z) * w + 1.0));
}

double step_to_distance(double r, double gmag) {
  if (r < 0.0 || gmag < 0.0) {
    throw std::invalid_argument("step parameter and gradient magnitude must "
                                "be nonnegative");
  }
  const double x = r * gmag;
  if (x >= 1.0) {
    throw std::domain_error("step r*|g| >= 1 would leave the disk");
  }
  return 2.0 * std::atanh(x);
}

double max_step_param(double ginf, double s_max) {
  if (!(ginf > 0.0)) {
    throw std::invalid_argument("max_step_param requires a positive gradient "
                                "norm");
  }
  if (s_max < 0.0) {
    throw std::invalid_argument("hyperbolic window must be nonnegative");
  }
  return std::tanh(0.5 * s_max) / ginf;
}

}  // namespace hypermds
