#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hypermds/euclidean.hpp"
#include "hypermds/objective.hpp"
#include "hypermds/solver.hpp"

namespace hypermds {

enum class SyntheticKind { EuclideanPlane, Sphere, HyperbolicDisk };

/// Random points on a surface of constant curvature; dissimilarities are
/// the surface's geodesic distances, optionally perturbed by multiplicative
/// noise uniform in [(1-e_m) delta, (1+e_m) delta].
struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::EuclideanPlane;
  std::size_t n = 0;
  double noise_e_m = 0.0;  // in [0, 1)
  std::uint64_t seed = 0;
  double sphere_radius = 1.0;  // sphere only
};

DissimilarityData generate_synthetic(const SyntheticSpec& spec);

/// Variant keeping the generator points (plane and disk kinds expose them
/// as complex coordinates, sphere as unit vectors scaled by the radius).
struct SyntheticResult {
  DissimilarityData data;
  std::vector<Complex> plane_or_disk_points;  // empty for sphere
};

SyntheticResult generate_synthetic_with_points(const SyntheticSpec& spec);

DissimilarityData add_noise(const DissimilarityData& data, double e_m,
                            std::uint64_t seed);

enum class GraphMode { Binary, ConstMinusWeight, ShortestPath };

using NodeId = std::uint64_t;

struct GraphEdge {
  NodeId u = 0;
  NodeId v = 0;
  std::optional<double> weight;
};

struct GraphInput {
  std::vector<GraphEdge> edges;
  GraphMode mode = GraphMode::Binary;
};

/// Binary: delta 1 on edges, missing elsewhere. ConstMinusWeight:
/// delta = (max weight + 1) - weight on edges, missing elsewhere.
/// ShortestPath: delta = shortest-path length for all pairs (edge weights
/// as lengths, defaulting to 1); the graph must be connected.
DissimilarityData graph_to_dissimilarity(const GraphInput& g);

struct ComponentResult {
  GraphInput graph;                    // ids compacted to 0..m-1
  std::vector<NodeId> original_ids;    // original id of each compacted node
};

/// Subgraph induced on the largest connected component; size ties go to the
/// component containing the smallest node id.
ComponentResult largest_connected_component(const GraphInput& g);

// ---------------------------------------------------------------------------
// File formats. Matrices are header-free n x n CSV; blank or NaN fields mark
// missing dissimilarities. Configurations and traces are small headed CSVs.
// ---------------------------------------------------------------------------

DissimilarityData read_dissimilarity_csv(const std::filesystem::path& path);

/// As above but with a weights sidecar of identical shape (blank fields
/// default to weight 1).
DissimilarityData read_dissimilarity_csv(
    const std::filesystem::path& path,
    const std::optional<std::filesystem::path>& weights_path);

void write_dissimilarity_csv(const std::filesystem::path& path,
                             const DissimilarityData& data);

/// Edge list: one "u v [weight]" per line, '#' starts a comment.
GraphInput read_edge_list(const std::filesystem::path& path, GraphMode mode);

void write_configuration_csv(const std::filesystem::path& path,
                             const Configuration& config);
Configuration read_configuration_csv(const std::filesystem::path& path);

void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<IterationRecord>& trace);

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepPoint>& sweep);
std::vector<SweepPoint> read_sweep_csv(const std::filesystem::path& path);

/// Per-iteration configurations of one run, flattened as "t,index,re,im".
void write_trajectory_csv(const std::filesystem::path& path,
                          const std::vector<Configuration>& snapshots);
std::vector<Configuration> read_trajectory_csv(
    const std::filesystem::path& path);

/// Full-precision decimal formatting used by all writers (17 significant
/// digits round-trips a double exactly).
std::string format_double(double v);

}  // namespace hypermds
