#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "guidex/graph.hpp"

namespace guidex::kernels {

/// Force model of the spring embedder with ideal edge length k:
/// every pair repels with k^2/d, every edge attracts with d^2/k, and pairs in
/// the same group (group[u] == group[v] >= 0) attract with
/// group_strength * d^2/k.
struct ForceModel {
  double k = 1.0;
  double group_strength = 0.0;
};

/// Parallel kernel: one task per node gathers its own displacement.
/// `disp` is overwritten. Results do not depend on the thread count.
void accumulate_forces(std::span<const Point> pos, const Adjacency& adj, std::span<const int> group,
                       const ForceModel& model, std::span<Point> disp);

/// Serial reference: visits each unordered pair and each edge once and
/// scatters equal and opposite forces.
void accumulate_forces_serial(std::span<const Point> pos, std::span<const std::pair<std::size_t, std::size_t>> edges,
                              std::span<const int> group, const ForceModel& model, std::span<Point> disp);

/// Straight segment between two node indices.
struct Segment {
  Point a;
  Point b;
  std::size_t u = 0;
  std::size_t v = 0;
};

struct CrossingStats {
  std::size_t crossings = 0;
  /// Smallest crossing angle in radians, in (0, pi/2]; pi/2 when no crossing.
  double min_angle = 0.0;
};

/// Counts proper crossings between segments that share no endpoint.
CrossingStats count_crossings(std::span<const Segment> segments);
CrossingStats count_crossings_serial(std::span<const Segment> segments);

/// True when the open segments cross at a single interior point.
bool segments_cross(const Segment& s, const Segment& t);
/// Acute angle between the two segment directions, in [0, pi/2].
double crossing_angle(const Segment& s, const Segment& t);

}  // namespace guidex::kernels
