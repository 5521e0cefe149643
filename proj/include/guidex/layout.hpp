#pragma once

#include <cstdint>
#include <vector>

#include "guidex/graph.hpp"
#include "guidex/kernels.hpp"

namespace guidex {

struct Canvas {
  double width = 1000.0;
  double height = 800.0;
  /// Fraction of each dimension kept free on every side.
  double margin = 0.05;
  /// Extra space reserved above the drawing area.
  double inset_top = 0.0;

  double left() const { return width * margin; }
  double top() const { return height * margin + inset_top; }
  double right() const { return width * (1.0 - margin); }
  double bottom() const { return height * (1.0 - margin); }
  bool contains(Point p, double eps = 1e-6) const {
    return p.x >= left() - eps && p.x <= right() + eps && p.y >= top() - eps && p.y <= bottom() + eps;
  }
};

struct ForceParams {
  /// Ideal edge length in layout units.
  double ideal_length = 1.0;
  int iterations = 300;
  std::uint64_t seed = 1;
  /// Pull between nodes of the same group, relative to edge attraction.
  double group_strength = 0.0;
  /// Pull towards the centroid keeping components together.
  double gravity = 0.05;
};

/// Spring embedder in layout units with linear cooling. `group` may be
/// empty; otherwise one entry per node, negative for no group.
std::vector<Point> simulate_force_directed(const Graph& graph, const ForceParams& params,
                                           const std::vector<int>& group = {});

/// Scales and translates positions uniformly into the canvas margins.
void fit_to_canvas(std::vector<Point>& positions, const Canvas& canvas);

std::vector<Point> layout_force_directed(const Graph& graph, const Canvas& canvas, std::uint64_t seed = 1,
                                         int iterations = 300);

/// Cluster per node: the graph's clusters when every node has one,
/// otherwise communities from modularity local moving. Values are 0..k-1 by first
/// appearance.
std::vector<int> cluster_assignment(const Graph& graph);

/// Spring embedder with extra attraction inside clusters.
std::vector<Point> layout_clustered(const Graph& graph, const Canvas& canvas, std::uint64_t seed = 1,
                                    int iterations = 300);

/// Node order along the vertical axis: topological for acyclic graphs
/// (smallest index first among ready nodes), a greedy feedback-arc-set order
/// otherwise.
std::vector<std::size_t> orthogonal_row_order(const Graph& graph);

struct OrthogonalLayout {
  std::vector<Point> positions;
  /// Per edge, in graph edge order: source, bend, target.
  std::vector<std::vector<Point>> routes;
  std::vector<int> row;
  std::vector<int> column;
};

/// One node per row and per column; each edge leaves its source
/// horizontally and enters its target vertically with a single bend.
OrthogonalLayout layout_orthogonal(const Graph& graph, const Canvas& canvas);

/// Moves nodes greedily to reduce crossings, then to widen the smallest
/// crossing angle, never increasing the crossing count.
std::vector<Point> refine_crossings(const Graph& graph, std::vector<Point> positions, const Canvas& canvas,
                                    std::uint64_t seed = 1, int rounds = 4);

/// Straight-line segments for every edge of the graph.
std::vector<kernels::Segment> edge_segments(const Graph& graph, const std::vector<Point>& positions);

}  // namespace guidex
