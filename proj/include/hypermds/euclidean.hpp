#pragma once

#include <cstdint>
#include <vector>

#include "hypermds/solver.hpp"

namespace hypermds {

/// Point of the Euclidean plane; coordinates must be finite.
struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
};

using PlaneConfiguration = std::vector<PlanePoint>;

double euclid_distance(PlanePoint p1, PlanePoint p2);

double euclid_embedding_error(const PlaneConfiguration& config,
                              const DissimilarityData& data,
                              const ErrorModel& model);

std::vector<Complex> euclid_gradient(const PlaneConfiguration& config,
                                     const DissimilarityData& data,
                                     const ErrorModel& model);

using EuclidRunResult = BasicRunResult<PlaneConfiguration>;

/// Same descent skeleton and stopping rules as the disk solver, with
/// straight-line steps z' = z - r g and the travel window s_max applied to
/// the Euclidean step length (r_max = s_max / ||g||_inf).
EuclidRunResult euclid_solve(const PlaneConfiguration& init,
                             const DissimilarityData& data,
                             const ErrorModel& model,
                             const SolverParams& params);

struct EuclidMultiStartResult {
  std::vector<EuclidRunResult> runs;
  std::size_t best_index = 0;

  const EuclidRunResult& best() const { return runs[best_index]; }
};

EuclidMultiStartResult euclid_multi_start(const DissimilarityData& data,
                                          const ErrorModel& model,
                                          const SolverParams& params,
                                          int replicates, std::uint64_t seed);

/// n points uniform on the unit square, pairwise separation >= 1e-6.
PlaneConfiguration random_plane_configuration(std::size_t n,
                                              std::uint64_t seed);

}  // namespace hypermds
