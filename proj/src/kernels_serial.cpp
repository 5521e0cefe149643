#include <algorithm>
#include <cmath>
#include <numbers>

#include "guidex/kernels.hpp"

namespace guidex::kernels {

namespace {

constexpr double kMinDistance = 1e-9;

}  // namespace

void accumulate_forces_serial(std::span<const Point> pos, std::span<const std::pair<std::size_t, std::size_t>> edges,
                              std::span<const int> group, const ForceModel& model, std::span<Point> disp) {
  const std::size_t n = pos.size();
  const double k = model.k;
  std::fill(disp.begin(), disp.end(), Point{});
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double dx = pos[u].x - pos[v].x;
      const double dy = pos[u].y - pos[v].y;
      const double d = std::max(std::hypot(dx, dy), kMinDistance);
      double f = k * k / d;
      if (!group.empty() && group[u] >= 0 && group[u] == group[v]) f -= model.group_strength * d * d / k;
      disp[u].x += dx / d * f;
      disp[u].y += dy / d * f;
      disp[v].x -= dx / d * f;
      disp[v].y -= dy / d * f;
    }
  }
  for (const auto& [u, v] : edges) {
    const double dx = pos[u].x - pos[v].x;
    const double dy = pos[u].y - pos[v].y;
    const double d = std::max(std::hypot(dx, dy), kMinDistance);
    const double f = d * d / k;
    disp[u].x -= dx / d * f;
    disp[u].y -= dy / d * f;
    disp[v].x += dx / d * f;
    disp[v].y += dy / d * f;
  }
}

bool segments_cross(const Segment& s, const Segment& t) {
  auto orient = [](Point p, Point q, Point r) { return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x); };
  const double d1 = orient(s.a, s.b, t.a);
  const double d2 = orient(s.a, s.b, t.b);
  const double d3 = orient(t.a, t.b, s.a);
  const double d4 = orient(t.a, t.b, s.b);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double crossing_angle(const Segment& s, const Segment& t) {
  const double a1 = std::atan2(s.b.y - s.a.y, s.b.x - s.a.x);
  const double a2 = std::atan2(t.b.y - t.a.y, t.b.x - t.a.x);
  double diff = std::fmod(std::abs(a1 - a2), std::numbers::pi);
  if (diff > std::numbers::pi / 2) diff = std::numbers::pi - diff;
  return diff;
}

CrossingStats count_crossings_serial(std::span<const Segment> segments) {
  CrossingStats stats{0, std::numbers::pi / 2};
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      const Segment& s = segments[i];
      const Segment& t = segments[j];
      if (s.u == t.u || s.u == t.v || s.v == t.u || s.v == t.v) continue;
      if (!segments_cross(s, t)) continue;
      ++stats.crossings;
      stats.min_angle = std::min(stats.min_angle, crossing_angle(s, t));
    }
  }
  return stats;
}

}  // namespace guidex::kernels
