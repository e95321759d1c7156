#include "hypermds/objective.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace hypermds {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::string entry(std::size_t j, std::size_t k) {
  return "(" + std::to_string(j) + "," + std::to_string(k) + ")";
}

}  // namespace

DissimilarityData DissimilarityData::create(SquareMatrix delta,
                                            SquareMatrix weights,
                                            SquareMatrix indicator) {
  const std::size_t n = delta.size();
  require(n >= 1, "dissimilarity matrix must be at least 1x1");
  require(weights.size() == n && indicator.size() == n,
          "delta, weights and indicator must have identical shape");
  for (std::size_t j = 0; j < n; ++j) {
    require(delta(j, j) == 0.0, "delta diagonal must be zero at " +
                                    entry(j, j));
    for (std::size_t k = 0; k < n; ++k) {
      const double i = indicator(j, k);
      require(i == 0.0 || i == 1.0, "indicator must be 0 or 1 at " +
                                        entry(j, k));
      require(std::isfinite(delta(j, k)) && std::isfinite(weights(j, k)),
              "non-finite entry at " + entry(j, k));
      require(weights(j, k) >= 0.0, "negative weight at " + entry(j, k));
      if (k > j) {
        require(delta(j, k) == delta(k, j),
                "delta not symmetric at " + entry(j, k));
        require(weights(j, k) == weights(k, j),
                "weights not symmetric at " + entry(j, k));
        require(indicator(j, k) == indicator(k, j),
                "indicator not symmetric at " + entry(j, k));
        if (i != 0.0) {
          require(delta(j, k) > 0.0,
                  "active dissimilarity must be positive at " + entry(j, k));
        }
      }
    }
  }
  if (n > 1) {
    for (std::size_t j = 0; j < n; ++j) {
      bool constrained = false;
      for (std::size_t k = 0; k < n && !constrained; ++k) {
        constrained = (k != j) && indicator(j, k) != 0.0;
      }
      require(constrained, "row " + std::to_string(j) +
                               " has no active dissimilarity");
    }
  }
  return DissimilarityData(n, std::move(delta), std::move(weights),
                           std::move(indicator));
}

DissimilarityData DissimilarityData::from_delta(SquareMatrix delta) {
  const std::size_t n = delta.size();
  SquareMatrix w(n, 1.0);
  SquareMatrix ind(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) ind(j, j) = 0.0;
  return create(std::move(delta), std::move(w), std::move(ind));
}

ErrorModel ErrorModel::ads(double a, bool normalize) {
  return {ErrorVariant::Ads, a, normalize, 1.0, {}};
}
ErrorModel ErrorModel::rds(double a, bool normalize) {
  return {ErrorVariant::Rds, a, normalize, 1.0, {}};
}
ErrorModel ErrorModel::sam(double a, bool normalize) {
  return {ErrorVariant::Sam, a, normalize, 1.0, {}};
}
ErrorModel ErrorModel::general(double c, SquareMatrix cjk, double a,
                               bool normalize) {
  return {ErrorVariant::General, a, normalize, c, std::move(cjk)};
}

void ErrorModel::validate() const {
  if (!(scale_a > 0.0) || !std::isfinite(scale_a)) {
    throw std::invalid_argument("scaling factor a must be positive");
  }
  if (variant == ErrorVariant::General && !std::isfinite(general_c)) {
    throw std::invalid_argument("general prefactor c must be finite");
  }
}

ErrorModel to_general(const ErrorModel& model, const DissimilarityData& data) {
  model.validate();
  const std::size_t n = data.size();
  const double a = model.scale_a;
  SquareMatrix cjk(n, 0.0);
  double c = 1.0;
  if (model.variant == ErrorVariant::Sam) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (data.active(j, k)) sum += data.delta(j, k);
      }
    }
    c = 1.0 / (a * sum);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k || !data.active(j, k)) continue;
      const double w = data.weight(j, k);
      const double ad = a * data.delta(j, k);
      switch (model.variant) {
        case ErrorVariant::Ads:
          cjk(j, k) = w;
          break;
        case ErrorVariant::Rds:
          cjk(j, k) = w / (ad * ad);
          break;
        case ErrorVariant::Sam:
          cjk(j, k) = w / ad;
          break;
        case ErrorVariant::General:
          cjk(j, k) = model.general_cjk(j, k);
          break;
      }
    }
  }
  if (model.variant == ErrorVariant::General) c = model.general_c;
  return ErrorModel::general(c, std::move(cjk), a, model.normalize_per_pair);
}

Gradient::Gradient(std::vector<Complex> components) : g_(std::move(components)) {
  for (const Complex& c : g_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("gradient entry is not finite");
    }
    inf_norm_ = std::max(inf_norm_, std::abs(c));
  }
}

SquareMatrix distance_matrix(const Configuration& config) {
  const std::size_t n = config.size();
  SquareMatrix d(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double v = hyp_distance(config[j], config[k]);
      d(j, k) = v;
      d(k, j) = v;
    }
  }
  return d;
}

namespace detail {

CompiledObjective::CompiledObjective(const DissimilarityData& data,
                                     const ErrorModel& model)
    : n_(data.size()) {
  model.validate();
  if (model.variant == ErrorVariant::General &&
      model.general_cjk.size() != n_) {
    throw std::invalid_argument("general c_jk matrix shape mismatch");
  }
  const double a = model.scale_a;
  prefactor_ = model.normalize_per_pair
                   ? 2.0 / (static_cast<double>(n_) * n_ - n_)
                   : 1.0;
  if (model.variant == ErrorVariant::Sam) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = j + 1; k < n_; ++k) {
        if (data.active(j, k)) sum += data.delta(j, k);
      }
    }
    if (sum <= 0.0) {
      throw std::invalid_argument("Sammon criterion needs a positive "
                                  "dissimilarity sum");
    }
    prefactor_ /= a * sum;
  } else if (model.variant == ErrorVariant::General) {
    prefactor_ *= model.general_c;
  }
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = j + 1; k < n_; ++k) {
      if (!data.active(j, k)) continue;
      const double w = data.weight(j, k);
      const double ad = a * data.delta(j, k);
      double coeff = 0.0;
      switch (model.variant) {
        case ErrorVariant::Ads: coeff = w; break;
        case ErrorVariant::Rds: coeff = w / (ad * ad); break;
        case ErrorVariant::Sam: coeff = w / ad; break;
        case ErrorVariant::General: coeff = model.general_cjk(j, k); break;
      }
      if (coeff == 0.0) continue;
      terms_.push_back({static_cast<std::uint32_t>(j),
                        static_cast<std::uint32_t>(k), coeff, ad});
    }
  }
}

double CompiledObjective::error(const Configuration& config) const {
  if (config.size() != n_) {
    throw std::invalid_argument("configuration size does not match data");
  }
  double sum = 0.0;
  for (const PairTerm& t : terms_) {
    const double diff = hyp_distance(config[t.j], config[t.k]) - t.target;
    sum += t.coeff * diff * diff;
  }
  return prefactor_ * sum;
}

double CompiledObjective::error_and_gradient(
    const Configuration& config, std::vector<Complex>& grad_out) const {
  if (config.size() != n_) {
    throw std::invalid_argument("configuration size does not match data");
  }
  grad_out.assign(n_, Complex(0.0, 0.0));
  double sum = 0.0;
  for (const PairTerm& t : terms_) {
    const Complex zj = config[t.j].value();
    const Complex zk = config[t.k].value();
    const double u = std::abs(zj - zk);
    if (u == 0.0) {
      throw DegenerateConfigurationError(
          "coincident points " + entry(t.j, t.k) +
          " share an active dissimilarity; gradient undefined");
    }
    const Complex cross = 1.0 - zj * std::conj(zk);
    const double v = std::abs(cross);
    double m = u / v;
    if (m >= 1.0) m = std::nextafter(1.0, 0.0);
    const double d = 2.0 * std::atanh(m);
    const double diff = d - t.target;
    sum += t.coeff * diff * diff;

    // grad of d wrt z_j (as dE/dy1 + i dE/dy2):
    //   2 / ((1-|z_j|^2)(1-|z_k|^2)) * [ (v/u)(z_j-z_k) + (u/v)(1 - z_j conj(z_k)) z_k ]
    // and symmetrically for z_k.
    const double den =
        (1.0 - std::norm(zj)) * (1.0 - std::norm(zk));
    const double scale = 2.0 * t.coeff * diff * 2.0 / den;
    const double vu = v / u;
    const double uv = u / v;
    grad_out[t.j] += scale * (vu * (zj - zk) + uv * cross * zk);
    grad_out[t.k] += scale * (vu * (zk - zj) + uv * std::conj(cross) * zj);
  }
  for (Complex& g : grad_out) g *= prefactor_;
  return prefactor_ * sum;
}

}  // namespace detail

double embedding_error(const Configuration& config,
                       const DissimilarityData& data,
                       const ErrorModel& model) {
  return detail::CompiledObjective(data, model).error(config);
}

Gradient gradient(const Configuration& config, const DissimilarityData& data,
                  const ErrorModel& model) {
  std::vector<Complex> g;
  detail::CompiledObjective(data, model).error_and_gradient(config, g);
  return Gradient(std::move(g));
}

std::pair<double, Gradient> error_and_gradient(const Configuration& config,
                                               const DissimilarityData& data,
                                               const ErrorModel& model) {
  std::vector<Complex> g;
  const double e =
      detail::CompiledObjective(data, model).error_and_gradient(config, g);
  return {e, Gradient(std::move(g))};
}

Configuration apply_step(const Configuration& config, const Gradient& g,
                         double r) {
  if (config.size() != g.size()) {
    throw std::invalid_argument("gradient size does not match configuration");
  }
  if (r < 0.0 || !std::isfinite(r)) {
    throw std::invalid_argument("step parameter must be finite and >= 0");
  }
  if (r * g.inf_norm() >= 1.0) {
    throw std::domain_error("step r*||g||_inf >= 1 would leave the disk");
  }
  if (r == 0.0) return config;
  std::vector<DiskPoint> moved;
  moved.reserve(config.size());
  for (std::size_t j = 0; j < config.size(); ++j) {
    const Complex gj = g[j];
    if (gj == Complex(0.0, 0.0)) {
      moved.push_back(config[j]);
      continue;
    }
    const Complex z = config[j].value();
    const Complex rg = r * gj;
    moved.push_back(DiskPoint((z - rg) / (1.0 - rg * std::conj(z))));
  }
  return Configuration(std::move(moved));
}

}  // namespace hypermds
