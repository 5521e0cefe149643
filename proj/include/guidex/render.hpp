#pragma once

#include <cstdint>
#include <vector>

#include "guidex/combination.hpp"
#include "guidex/graph.hpp"
#include "guidex/layout.hpp"
#include "guidex/scene.hpp"

namespace guidex {

struct RenderOptions {
  Canvas canvas;
  double node_radius = 8.0;
  std::uint64_t seed = 1;
  int iterations = 300;
  /// Share of each edge drawn from its source by the partially-drawn style.
  double partial_fraction = 0.75;
  /// Width of a tapered edge at its source.
  double taper_width = 8.0;
  /// Control-point offset of curved edges relative to edge length.
  double curve_offset = 0.15;
  double arrow_size = 10.0;
  double hull_padding = 10.0;
  double bubble_padding = 10.0;
  /// Sampling step of the bubble outline.
  double bubble_grid = 4.0;
  double bar_width = 5.0;
  double bar_height = 24.0;
  /// Statement banner along the top edge.
  bool banner = true;
  bool labels = true;
};

/// Renders the graph under a validated plan. Throws ValidationError when
/// the plan does not fit the graph's type and MissingData when an overlay
/// needs data the graph lacks. Graphs with more than one timestep render as
/// small multiples, one panel per slice.
Scene render(const Graph& graph, const RenderPlan& plan, const RenderOptions& options = {});

/// Convex hull (counter-clockwise, no collinear points) of a point set.
std::vector<Point> convex_hull(std::vector<Point> points);

/// Polygon containment; points on the boundary count as inside.
bool point_in_polygon(Point p, const std::vector<Point>& polygon, double eps = 1e-6);

/// Closed outlines of the bubble around `members`: each outline is a ring of
/// points; the enclosed region is defined by the even-odd rule.
std::vector<std::vector<Point>> bubble_outline(const std::vector<Point>& members, double radius, double step);

/// Even-odd containment over a set of rings.
bool point_in_rings(Point p, const std::vector<std::vector<Point>>& rings);

/// Per-node fill for hierarchical coloring: hue ranges split among children.
std::vector<std::string> hierarchical_colors(const Graph& graph);

}  // namespace guidex
