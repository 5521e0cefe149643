#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "guidex/graph.hpp"

namespace guidex {

/// Portable seeded generator: std::mt19937_64 (fully specified by the
/// standard) with hand-written bounded and unit-interval draws, so the
/// sequence does not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1) with 53 random bits.
  double unit();
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

struct GenerationSpec {
  int node_count = 10;
  int cluster_count = 1;
  int timestep_count = 1;
  bool directed = false;
  int attachment_edges = 1;
  std::uint64_t seed = 0;
};

/// Throws InvalidGenerationSpec when an invariant does not hold.
void validate(const GenerationSpec& spec);

/// Clustered preferential-attachment graph. Clusters are joined by exactly
/// cluster_count - 1 inter-cluster edges. For timestep_count > 1 every edge
/// carries an explicit timestep: slice 0 is the base graph and each later
/// slice removes and adds ceil(5% of E) edges relative to the previous one.
Graph generate_graph(const GenerationSpec& spec);

inline constexpr double kTimesliceChurn = 0.05;

/// Nodes per cluster: N split as evenly as possible, larger clusters first.
std::vector<int> cluster_sizes(int node_count, int cluster_count);

}  // namespace guidex
