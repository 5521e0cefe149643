#include <algorithm>
#include <cmath>
#include <numbers>

#include "guidex/kernels.hpp"

namespace guidex::kernels {

void accumulate_forces(std::span<const Point> pos, const Adjacency& adj, std::span<const int> group,
                       const ForceModel& model, std::span<Point> disp) {
  const long n = static_cast<long>(pos.size());
  const double k = model.k;
  const bool grouped = !group.empty();
#pragma omp parallel for schedule(static)
  for (long ui = 0; ui < n; ++ui) {
    const auto u = static_cast<std::size_t>(ui);
    double fx = 0.0;
    double fy = 0.0;
    for (std::size_t v = 0; v < pos.size(); ++v) {
      if (v == u) continue;
      const double dx = pos[u].x - pos[v].x;
      const double dy = pos[u].y - pos[v].y;
      const double d = std::max(std::hypot(dx, dy), 1e-9);
      double f = k * k / d;
      if (grouped && group[u] >= 0 && group[u] == group[v]) f -= model.group_strength * d * d / k;
      fx += dx / d * f;
      fy += dy / d * f;
    }
    for (std::size_t i = adj.offsets[u]; i < adj.offsets[u + 1]; ++i) {
      const std::size_t v = adj.neighbors[i];
      const double dx = pos[u].x - pos[v].x;
      const double dy = pos[u].y - pos[v].y;
      const double d = std::max(std::hypot(dx, dy), 1e-9);
      fx -= dx * d / k;
      fy -= dy * d / k;
    }
    disp[u] = Point{fx, fy};
  }
}

CrossingStats count_crossings(std::span<const Segment> segments) {
  const long m = static_cast<long>(segments.size());
  std::size_t crossings = 0;
  double min_angle = std::numbers::pi / 2;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : crossings) reduction(min : min_angle)
  for (long i = 0; i < m; ++i) {
    const Segment& s = segments[static_cast<std::size_t>(i)];
    for (long j = i + 1; j < m; ++j) {
      const Segment& t = segments[static_cast<std::size_t>(j)];
      if (s.u == t.u || s.u == t.v || s.v == t.u || s.v == t.v) continue;
      if (!segments_cross(s, t)) continue;
      ++crossings;
      min_angle = std::min(min_angle, crossing_angle(s, t));
    }
  }
  return CrossingStats{crossings, min_angle};
}

}  // namespace guidex::kernels
