#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "guidex/graph.hpp"

namespace guidex {

/// Draw order: background overlays, edges, nodes, labels.
enum class Layer { overlay = 0, edge = 1, node = 2, label = 3 };

struct Style {
  std::string stroke = "none";
  std::string fill = "none";
  double stroke_width = 1.0;
  double opacity = 1.0;
  std::string dasharray;
  std::string fill_rule;
};

struct Polyline {
  std::vector<Point> points;
};

struct Polygon {
  std::vector<Point> points;
};

/// Path made of move/line/quadratic/close commands.
struct PathCommand {
  enum class Op { move, line, quad, close };
  Op op = Op::move;
  Point a;  // target for move/line, control for quad
  Point b;  // target for quad
};

struct Path {
  std::vector<PathCommand> commands;
};

struct Circle {
  Point center;
  double radius = 0.0;
};

struct Rect {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
};

struct Text {
  Point at;
  std::string text;
  double size = 12.0;
  std::string anchor = "start";
};

using Shape = std::variant<Polyline, Polygon, Path, Circle, Rect, Text>;

/// Dash-offset cycle the UI (and the SVG writer) animates.
struct AnimationHint {
  double dash_cycle = 10.0;
  double duration_s = 1.0;
};

struct Primitive {
  Shape shape;
  Style style;
  Layer layer = Layer::edge;
  /// What the primitive depicts ("edge", "node", "hull", "bubble", "bar",
  /// "cell", "label", "banner", ...) and the element index it belongs to.
  std::string role;
  long ref = -1;
  std::optional<AnimationHint> animation;
};

/// One time slice of a small-multiples scene.
struct Panel {
  int timestep = 0;
  Rect frame;
  /// Node positions in panel-local coordinates.
  std::vector<Point> positions;
};

struct Scene {
  double width = 0.0;
  double height = 0.0;
  std::vector<Primitive> items;
  /// Statements of the applied guidelines, main first.
  std::vector<std::string> statements;
  std::vector<std::string> unimplemented;
  std::vector<std::string> notes;
  std::vector<Panel> panels;
  /// Final node positions for single-panel scenes.
  std::vector<Point> positions;

  void add(Primitive p) { items.push_back(std::move(p)); }
  /// Stable sort by layer.
  void finalize();
};

/// Standalone SVG 1.1 document; identical scenes give identical bytes.
std::string scene_to_svg(const Scene& scene);

/// Fixed-precision number formatting shared by the SVG writer.
std::string format_number(double v);

}  // namespace guidex
