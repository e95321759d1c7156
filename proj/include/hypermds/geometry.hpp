#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hypermds {

using Complex = std::complex<double>;

/// Points are kept at |z| <= 1 - kBoundaryGuard so that every distance
/// computation sees an atanh argument strictly below 1.
inline constexpr double kBoundaryGuard = 1e-12;

/// A point of the open unit disk. Construction clamps to the guarded radius
/// and rejects non-finite coordinates.
class DiskPoint {
 public:
  DiskPoint() = default;
  DiskPoint(double re, double im);
  explicit DiskPoint(Complex z);

  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  Complex value() const { return z_; }

  friend bool operator==(const DiskPoint& a, const DiskPoint& b) {
    return a.z_ == b.z_;
  }

 private:
  Complex z_{0.0, 0.0};
};

/// Unit complex number giving a travel direction. Normalized on
/// construction; inputs with magnitude below 1e-15 are rejected.
class Direction {
 public:
  explicit Direction(Complex v);
  Complex value() const { return g_; }

 private:
  Complex g_;
};

/// Disk automorphism z -> (a z + b) / (conj(b) z + conj(a)).
/// Requires |a|^2 - |b|^2 > 0 and not within 1e-15 of zero, so the map
/// keeps the disk invariant and is a hyperbolic isometry.
class MobiusTransform {
 public:
  MobiusTransform(Complex a, Complex b);
  Complex a() const { return a_; }
  Complex b() const { return b_; }

 private:
  Complex a_;
  Complex b_;
};

/// Ordered list of n >= 1 disk points.
class Configuration {
 public:
  explicit Configuration(std::vector<DiskPoint> points);

  std::size_t size() const { return points_.size(); }
  const DiskPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<DiskPoint>& points() const { return points_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::vector<DiskPoint> points_;
};

/// Hyperbolic distance 2 atanh(|z1-z2| / |1 - z1 conj(z2)|).
double hyp_distance(DiskPoint z1, DiskPoint z2);

DiskPoint mobius_apply(const MobiusTransform& t, DiskPoint z);

/// Travels hyperbolic distance s >= 0 from z0 in direction gamma along the
/// distance-realizing ray; the image is at hyperbolic distance s from z0.
DiskPoint geodesic_move(DiskPoint z0, Direction gamma, double s);

/// Hyperbolic distance traveled by a point whose gradient entry has
/// magnitude gmag under step parameter r: ln((1 + r gmag)/(1 - r gmag)).
/// Throws std::domain_error when r*gmag >= 1 (the move would leave the disk).
double step_to_distance(double r, double gmag);

/// Largest step parameter keeping every point within hyperbolic distance
/// s_max: tanh(s_max/2) / ginf. Strictly below 1/ginf.
double max_step_param(double ginf, double s_max);

}  // namespace hypermds
