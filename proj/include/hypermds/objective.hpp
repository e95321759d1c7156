#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypermds/geometry.hpp"

namespace hypermds {

/// Dense square matrix, row-major. Just enough for dissimilarity data and
/// per-pair coefficients.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0)
      : n_(n), v_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t j, std::size_t k) { return v_[j * n_ + k]; }
  double operator()(std::size_t j, std::size_t k) const {
    return v_[j * n_ + k];
  }
  const std::vector<double>& values() const { return v_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> v_;
};

/// Raised when a gradient is requested at a configuration with two
/// coincident points joined by an active pair (the error surface is not
/// differentiable there).
class DegenerateConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Target dissimilarities delta with weights and a 0/1 indicator for
/// missing entries. All three matrices are symmetric with zero-ish diagonal;
/// wherever the indicator is 1 the dissimilarity must be positive.
/// Missing entries carry the placeholder value 1 for both delta and weight;
/// they are never read by any objective sum.
class DissimilarityData {
 public:
  static DissimilarityData create(SquareMatrix delta, SquareMatrix weights,
                                  SquareMatrix indicator);

  /// Full indicator, unit weights.
  static DissimilarityData from_delta(SquareMatrix delta);

  std::size_t size() const { return n_; }
  double delta(std::size_t j, std::size_t k) const { return delta_(j, k); }
  double weight(std::size_t j, std::size_t k) const { return weights_(j, k); }
  bool active(std::size_t j, std::size_t k) const {
    return indicator_(j, k) != 0.0;
  }
  const SquareMatrix& delta_matrix() const { return delta_; }
  const SquareMatrix& weight_matrix() const { return weights_; }
  const SquareMatrix& indicator_matrix() const { return indicator_; }

 private:
  DissimilarityData(std::size_t n, SquareMatrix d, SquareMatrix w,
                    SquareMatrix i)
      : n_(n), delta_(std::move(d)), weights_(std::move(w)),
        indicator_(std::move(i)) {}

  std::size_t n_ = 0;
  SquareMatrix delta_;
  SquareMatrix weights_;
  SquareMatrix indicator_;
};

enum class ErrorVariant { Ads, Rds, Sam, General };

/// Selects the embedding error function. The general form is
///   E = c * sum_{j<k} c_jk (d_jk - a delta_jk)^2
/// and the named variants fix (c, c_jk) from weights and dissimilarities.
struct ErrorModel {
  ErrorVariant variant = ErrorVariant::Sam;
  double scale_a = 1.0;
  bool normalize_per_pair = false;

  // Only read for ErrorVariant::General.
  double general_c = 1.0;
  SquareMatrix general_cjk;

  static ErrorModel ads(double a = 1.0, bool normalize = false);
  static ErrorModel rds(double a = 1.0, bool normalize = false);
  static ErrorModel sam(double a = 1.0, bool normalize = false);
  static ErrorModel general(double c, SquareMatrix cjk, double a = 1.0,
                            bool normalize = false);

  void validate() const;
};

/// The general-form model whose evaluation reproduces the given variant on
/// the given data, summand for summand.
ErrorModel to_general(const ErrorModel& model, const DissimilarityData& data);

/// Error gradient in rectangular coordinates, entry j being
/// dE/dy_{j,1} + i dE/dy_{j,2}.
class Gradient {
 public:
  explicit Gradient(std::vector<Complex> components);

  std::size_t size() const { return g_.size(); }
  Complex operator[](std::size_t j) const { return g_[j]; }
  const std::vector<Complex>& components() const { return g_; }
  double inf_norm() const { return inf_norm_; }

 private:
  std::vector<Complex> g_;
  double inf_norm_ = 0.0;
};

SquareMatrix distance_matrix(const Configuration& config);

double embedding_error(const Configuration& config,
                       const DissimilarityData& data, const ErrorModel& model);

Gradient gradient(const Configuration& config, const DissimilarityData& data,
                  const ErrorModel& model);

/// Fused evaluation; one pass over the pairs when both values are needed.
std::pair<double, Gradient> error_and_gradient(const Configuration& config,
                                               const DissimilarityData& data,
                                               const ErrorModel& model);

/// Moves every point along the Mobius step
///   z_j' = (-r g_j + z_j) / (-r g_j conj(z_j) + 1),
/// i.e. hyperbolic distance ln((1+r|g_j|)/(1-r|g_j|)) in direction -g_j.
/// Requires r * ||g||_inf < 1.
Configuration apply_step(const Configuration& config, const Gradient& g,
                         double r);

namespace detail {

/// Pairwise objective with all constants folded in, built once per solve so
/// the hot loop touches only active pairs.
class CompiledObjective {
 public:
  CompiledObjective(const DissimilarityData& data, const ErrorModel& model);

  double error(const Configuration& config) const;
  double error_and_gradient(const Configuration& config,
                            std::vector<Complex>& grad_out) const;
  std::size_t size() const { return n_; }

 private:
  struct PairTerm {
    std::uint32_t j;
    std::uint32_t k;
    double coeff;   // c_jk including the variant's per-pair factors
    double target;  // a * delta_jk
  };

  std::size_t n_ = 0;
  double prefactor_ = 1.0;
  std::vector<PairTerm> terms_;
};

}  // namespace detail
}  // namespace hypermds
