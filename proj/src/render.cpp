#include "guidex/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

namespace guidex {

namespace {

constexpr const char* kPalette[] = {"#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3",
                                    "#a6d854", "#ffd92f", "#e5c494", "#b3b3b3"};
constexpr std::size_t kPaletteSize = std::size(kPalette);
constexpr const char* kEdgeColor = "#555555";
constexpr const char* kNodeColor = "#4a7fb5";
constexpr double kBannerLine = 14.0;

const char* palette(long i) {
  return kPalette[static_cast<std::size_t>(i < 0 ? 0 : i) % kPaletteSize];
}

Point sub(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
Point add(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
Point scale(Point a, double s) { return {a.x * s, a.y * s}; }
double length(Point a) { return std::hypot(a.x, a.y); }

double polyline_length(const std::vector<Point>& pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += length(sub(pts[i], pts[i - 1]));
  return total;
}

/// Prefix of a polyline up to arc length `s`.
std::vector<Point> polyline_prefix(const std::vector<Point>& pts, double s) {
  std::vector<Point> out{pts.front()};
  double walked = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double seg = length(sub(pts[i], pts[i - 1]));
    if (walked + seg >= s) {
      const double t = seg > 0 ? (s - walked) / seg : 0.0;
      out.push_back(add(pts[i - 1], scale(sub(pts[i], pts[i - 1]), t)));
      return out;
    }
    walked += seg;
    out.push_back(pts[i]);
  }
  return out;
}

Point polyline_point_at(const std::vector<Point>& pts, double s) { return polyline_prefix(pts, s).back(); }

struct Translator {
  double dx;
  double dy;
  void shift(Point& p) const {
    p.x += dx;
    p.y += dy;
  }
  void operator()(Polyline& s) const {
    for (Point& p : s.points) shift(p);
  }
  void operator()(Polygon& s) const {
    for (Point& p : s.points) shift(p);
  }
  void operator()(Path& s) const {
    for (PathCommand& c : s.commands) {
      shift(c.a);
      shift(c.b);
    }
  }
  void operator()(Circle& s) const { shift(s.center); }
  void operator()(Rect& s) const {
    s.x += dx;
    s.y += dy;
  }
  void operator()(Text& s) const { shift(s.at); }
};

Style edge_stroke(double width = 1.5) {
  Style s;
  s.stroke = kEdgeColor;
  s.stroke_width = width;
  s.opacity = 0.85;
  return s;
}

Style solid_fill(const std::string& color, double opacity = 1.0) {
  Style s;
  s.fill = color;
  s.opacity = opacity;
  return s;
}

std::string hsl_to_hex(double h, double s, double l) {
  const double c = (1.0 - std::abs(2.0 * l - 1.0)) * s;
  const double hp = std::fmod(h, 360.0) / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) {
    r = c, g = x;
  } else if (hp < 2) {
    r = x, g = c;
  } else if (hp < 3) {
    g = c, b = x;
  } else if (hp < 4) {
    g = x, b = c;
  } else if (hp < 5) {
    r = x, b = c;
  } else {
    r = c, b = x;
  }
  const double m = l - c / 2.0;
  auto byte = [&](double v) { return static_cast<int>(std::lround(std::clamp(v + m, 0.0, 1.0) * 255.0)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", byte(r), byte(g), byte(b));
  return buf;
}

/// Everything a single panel needs besides the graph.
struct PanelContext {
  const RenderPlan& plan;
  const RenderOptions& options;
  Canvas canvas;
  std::vector<int> clusters;
  std::vector<std::string> tree_colors;
  double bar_scale = 0.0;
};

std::vector<std::vector<Point>> edge_paths(const Graph& g, const std::vector<Point>& pos, const RenderPlan& plan) {
  std::vector<std::vector<Point>> paths;
  paths.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    const Point s = pos[e.source];
    const Point t = pos[e.target];
    if (plan.layout == LayoutKind::orthogonal && s.x != t.x && s.y != t.y) {
      paths.push_back({s, Point{t.x, s.y}, t});
    } else {
      paths.push_back({s, t});
    }
  }
  return paths;
}

std::vector<Point> tapered_polygon(const std::vector<Point>& path, double width) {
  const double total = polyline_length(path);
  std::vector<Point> left;
  std::vector<Point> right;
  double walked = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Point d = sub(path[i], path[i - 1]);
    const double len = length(d);
    if (len <= 0) continue;
    const Point n{-d.y / len, d.x / len};
    const double w0 = total > 0 ? width * (1.0 - walked / total) : 0.0;
    walked += len;
    const double w1 = total > 0 ? width * (1.0 - walked / total) : 0.0;
    left.push_back(add(path[i - 1], scale(n, w0 / 2)));
    right.push_back(sub(path[i - 1], scale(n, w0 / 2)));
    if (i + 1 == path.size()) {
      left.push_back(path[i]);
    } else {
      left.push_back(add(path[i], scale(n, w1 / 2)));
      right.push_back(sub(path[i], scale(n, w1 / 2)));
    }
  }
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

void draw_edges(Scene& scene, const Graph& g, const std::vector<std::vector<Point>>& paths, const PanelContext& ctx) {
  const RenderOptions& o = ctx.options;
  const EdgeStyle style = ctx.plan.edge_style.value_or(g.directed() ? EdgeStyle::arrow : EdgeStyle::line);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& path = paths[i];
    const long ref = static_cast<long>(i);
    const double total = polyline_length(path);
    if (total <= 0) continue;
    switch (style) {
      case EdgeStyle::line:
        scene.add({Polyline{path}, edge_stroke(), Layer::edge, "edge", ref, {}});
        break;
      case EdgeStyle::arrow: {
        const Point tip = polyline_point_at(path, std::max(0.0, total - o.node_radius));
        const Point base_at = polyline_point_at(path, std::max(0.0, total - o.node_radius - o.arrow_size));
        const Point d = sub(tip, base_at);
        const double len = length(d);
        scene.add({Polyline{polyline_prefix(path, std::max(0.0, total - o.node_radius - o.arrow_size))},
                   edge_stroke(), Layer::edge, "edge", ref, {}});
        if (len > 0) {
          const Point n{-d.y / len * o.arrow_size * 0.4, d.x / len * o.arrow_size * 0.4};
          scene.add({Polygon{{tip, add(base_at, n), sub(base_at, n)}}, solid_fill(kEdgeColor, 0.85), Layer::edge,
                     "arrowhead", ref, {}});
        }
        break;
      }
      case EdgeStyle::tapered:
        scene.add({Polygon{tapered_polygon(path, o.taper_width)}, solid_fill(kEdgeColor, 0.6), Layer::edge, "edge",
                   ref, {}});
        break;
      case EdgeStyle::partially_drawn:
        scene.add({Polyline{polyline_prefix(path, o.partial_fraction * total)}, edge_stroke(), Layer::edge, "edge",
                   ref, {}});
        break;
      case EdgeStyle::curved: {
        const Point s = path.front();
        const Point t = path.back();
        const Point d = sub(t, s);
        const double len = length(d);
        // Screen y points down, so (-dy, dx) turns the direction clockwise.
        const Point n{-d.y / len, d.x / len};
        const Point control = add(scale(add(s, t), 0.5), scale(n, o.curve_offset * len));
        Path curve{{{PathCommand::Op::move, s, {}}, {PathCommand::Op::quad, control, t}}};
        scene.add({curve, edge_stroke(), Layer::edge, "edge", ref, {}});
        break;
      }
      case EdgeStyle::animated_pattern: {
        Style s = edge_stroke(2.0);
        s.dasharray = "6 4";
        scene.add({Polyline{path}, s, Layer::edge, "edge", ref, AnimationHint{10.0, 1.0}});
        break;
      }
    }
  }
}

void draw_hulls(Scene& scene, const std::vector<Point>& pos, const PanelContext& ctx) {
  std::map<int, std::vector<Point>> samples;
  const double r = ctx.options.node_radius + ctx.options.hull_padding;
  constexpr int kDirections = 16;
  for (std::size_t v = 0; v < pos.size(); ++v) {
    for (int k = 0; k < kDirections; ++k) {
      const double a = 2.0 * M_PI * k / kDirections;
      samples[ctx.clusters[v]].push_back({pos[v].x + r * std::cos(a), pos[v].y + r * std::sin(a)});
    }
  }
  for (auto& [cluster, pts] : samples) {
    Style s = solid_fill(palette(cluster), 0.25);
    s.stroke = palette(cluster);
    scene.add({Polygon{convex_hull(std::move(pts))}, s, Layer::overlay, "hull", cluster, {}});
  }
}

std::vector<std::pair<std::size_t, std::size_t>> spanning_tree(const std::vector<Point>& pts) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = pts.size();
  if (n < 2) return out;
  std::vector<bool> in(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> from(n, 0);
  in[0] = true;
  for (std::size_t v = 1; v < n; ++v) best[v] = length(sub(pts[v], pts[0]));
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in[v] && (pick == n || best[v] < best[pick])) pick = v;
    }
    in[pick] = true;
    out.emplace_back(from[pick], pick);
    for (std::size_t v = 0; v < n; ++v) {
      const double d = length(sub(pts[v], pts[pick]));
      if (!in[v] && d < best[v]) {
        best[v] = d;
        from[v] = pick;
      }
    }
  }
  return out;
}

double segment_distance(Point p, Point a, Point b) {
  const Point ab = sub(b, a);
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 > 0 ? ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return length(sub(p, add(a, scale(ab, t))));
}

void draw_bubbles(Scene& scene, const std::vector<Point>& pos, const PanelContext& ctx) {
  std::map<int, std::vector<Point>> members;
  for (std::size_t v = 0; v < pos.size(); ++v) members[ctx.clusters[v]].push_back(pos[v]);
  const double radius = ctx.options.node_radius + ctx.options.bubble_padding;
  for (const auto& [cluster, pts] : members) {
    Path path;
    for (const auto& ring : bubble_outline(pts, radius, ctx.options.bubble_grid)) {
      path.commands.push_back({PathCommand::Op::move, ring.front(), {}});
      for (std::size_t i = 1; i < ring.size(); ++i) path.commands.push_back({PathCommand::Op::line, ring[i], {}});
      path.commands.push_back({PathCommand::Op::close, {}, {}});
    }
    Style s = solid_fill(palette(cluster), 0.3);
    s.stroke = palette(cluster);
    s.fill_rule = "evenodd";
    scene.add({std::move(path), s, Layer::overlay, "bubble", cluster, {}});
  }
}

void draw_bars(Scene& scene, const Graph& g, const std::vector<std::vector<Point>>& paths, const PanelContext& ctx) {
  const RenderOptions& o = ctx.options;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& attrs = g.edges()[i].attributes;
    if (attrs.empty() || ctx.bar_scale <= 0) continue;
    const Point mid = polyline_point_at(paths[i], 0.5 * polyline_length(paths[i]));
    const double x0 = mid.x - 0.5 * o.bar_width * static_cast<double>(attrs.size());
    for (std::size_t k = 0; k < attrs.size(); ++k) {
      const double h = std::abs(attrs[k]) * ctx.bar_scale;
      const Rect r{x0 + o.bar_width * static_cast<double>(k), attrs[k] >= 0 ? mid.y - h : mid.y, o.bar_width, h};
      Style s = solid_fill(palette(static_cast<long>(k)));
      s.stroke = "#333333";
      s.stroke_width = 0.5;
      scene.add({r, s, Layer::label, "bar", static_cast<long>(i), {}});
    }
  }
}

void draw_nodes(Scene& scene, const Graph& g, const std::vector<Point>& pos, const PanelContext& ctx) {
  const bool by_cluster = ctx.plan.layout == LayoutKind::clustered || !ctx.plan.overlays.empty() || g.has_clusters();
  for (std::size_t v = 0; v < pos.size(); ++v) {
    std::string fill = kNodeColor;
    if (!ctx.tree_colors.empty()) {
      fill = ctx.tree_colors[v];
    } else if (by_cluster && !ctx.clusters.empty()) {
      fill = palette(ctx.clusters[v]);
    }
    Style s = solid_fill(fill);
    s.stroke = "#ffffff";
    s.stroke_width = 1.5;
    scene.add({Circle{pos[v], ctx.options.node_radius}, s, Layer::node, "node", static_cast<long>(v), {}});
    if (ctx.options.labels && g.node(v).label && pos.size() <= 60) {
      const Point at{pos[v].x, pos[v].y - ctx.options.node_radius - 3.0};
      scene.add({Text{at, *g.node(v).label, 10.0, "middle"}, solid_fill("#222222"), Layer::label, "label",
                 static_cast<long>(v), {}});
    }
  }
}

std::vector<Point> panel_positions(const Graph& g, const PanelContext& ctx) {
  const RenderOptions& o = ctx.options;
  std::vector<Point> pos;
  switch (ctx.plan.layout) {
    case LayoutKind::orthogonal:
      pos = layout_orthogonal(g, ctx.canvas).positions;
      break;
    case LayoutKind::clustered:
      pos = layout_clustered(g, ctx.canvas, o.seed, o.iterations);
      break;
    case LayoutKind::force_directed:
    case LayoutKind::matrix:
      if (ctx.plan.layout_defaulted && g.has_positions()) {
        for (const Node& n : g.nodes()) pos.push_back(*n.position);
        fit_to_canvas(pos, ctx.canvas);
      } else {
        pos = layout_force_directed(g, ctx.canvas, o.seed, o.iterations);
      }
      break;
  }
  if (ctx.plan.annotations.count(AnnotationKind::crossing_refinement)) {
    pos = refine_crossings(g, std::move(pos), ctx.canvas, o.seed);
  }
  return pos;
}

/// Draws a single-timestep graph at the given positions.
void draw_panel(Scene& scene, const Graph& g, const std::vector<Point>& pos, const PanelContext& ctx) {
  const auto paths = edge_paths(g, pos, ctx.plan);
  if (ctx.plan.overlays.count(OverlayKind::cluster_hulls)) draw_hulls(scene, pos, ctx);
  if (ctx.plan.overlays.count(OverlayKind::bubble_sets)) draw_bubbles(scene, pos, ctx);
  draw_edges(scene, g, paths, ctx);
  if (ctx.plan.overlays.count(OverlayKind::edge_bars)) draw_bars(scene, g, paths, ctx);
  draw_nodes(scene, g, pos, ctx);
}

void draw_matrix(Scene& scene, const Graph& graph, const RenderOptions& o, double top_offset) {
  const Graph g = graph.timestep_count() > 1 ? graph.union_graph() : graph;
  const std::size_t n = g.node_count();
  if (n == 0) return;
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.node(a).id < g.node(b).id; });
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

  const Canvas& c = o.canvas;
  const bool labels = o.labels && n <= 40;
  const double label_space = labels ? 40.0 : 0.0;
  const double top = c.top() + top_offset;
  const double cell = std::min((c.right() - c.left() - label_space) / static_cast<double>(n),
                               (c.bottom() - top - label_space) / static_cast<double>(n));
  const double x0 = c.left() + label_space;
  const double y0 = top + label_space;
  Style frame;
  frame.stroke = "#999999";
  scene.add({Rect{x0, y0, cell * static_cast<double>(n), cell * static_cast<double>(n)}, frame, Layer::overlay,
             "grid", -1, {}});
  auto add_cell = [&](std::size_t row, std::size_t col) {
    scene.add({Rect{x0 + cell * static_cast<double>(col), y0 + cell * static_cast<double>(row), cell, cell},
               solid_fill(kNodeColor), Layer::edge, "cell", static_cast<long>(row * n + col), {}});
  };
  for (const Edge& e : g.edges()) {
    add_cell(rank[e.source], rank[e.target]);
    if (!g.directed()) add_cell(rank[e.target], rank[e.source]);
  }
  if (labels) {
    const double size = std::min(10.0, cell * 0.8);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& id = g.node(order[i]).id;
      const double mid = cell * (static_cast<double>(i) + 0.5);
      scene.add({Text{{x0 - 4.0, y0 + mid + size / 3}, id, size, "end"}, solid_fill("#222222"), Layer::label,
                 "label", static_cast<long>(order[i]), {}});
      scene.add({Text{{x0 + mid, y0 - 4.0}, id, size, "middle"}, solid_fill("#222222"), Layer::label, "label",
                 static_cast<long>(order[i]), {}});
    }
  }
}

void check_plan(const Graph& graph, const RenderPlan& plan) {
  if (plan.edge_style) {
    const EdgeStyle s = *plan.edge_style;
    const bool needs_direction =
        s == EdgeStyle::arrow || s == EdgeStyle::tapered || s == EdgeStyle::partially_drawn ||
        s == EdgeStyle::animated_pattern;
    if (needs_direction && !graph.directed()) {
      throw ValidationError(std::string("edge style '") + std::string(to_string(s)) +
                            "' needs a directed graph");
    }
    if (s == EdgeStyle::curved && graph.directed()) {
      throw ValidationError("edge style 'curved' needs an undirected graph");
    }
  }
  if (plan.main.empty() || graph.node_count() < 2) return;
  const GraphTypeSet closure = compatibility_closure(compute_metrics(graph).detected_types);
  const bool fits = std::any_of(plan.shared_types.begin(), plan.shared_types.end(),
                                [&](GraphTypeTag t) { return closure.count(t) > 0; });
  if (!fits) throw ValidationError("render plan does not fit the graph type");
}

double banner_height(const RenderPlan& plan, const RenderOptions& o) {
  if (!o.banner) return 0.0;
  const std::size_t lines = plan.statements.size() + (plan.unimplemented.empty() ? 0 : 1);
  return lines == 0 ? 0.0 : kBannerLine * static_cast<double>(lines) + 6.0;
}

void draw_banner(Scene& scene, const RenderPlan& plan, const RenderOptions& o) {
  if (!o.banner) return;
  double y = kBannerLine;
  for (const std::string& s : plan.statements) {
    scene.add({Text{{8.0, y}, s, 11.0, "start"}, solid_fill("#222222"), Layer::label, "banner", -1, {}});
    y += kBannerLine;
  }
  if (!plan.unimplemented.empty()) {
    std::string ids;
    for (const auto& id : plan.unimplemented) ids += (ids.empty() ? "" : ", ") + id;
    scene.add({Text{{8.0, y}, "not implemented, base graph shown: " + ids, 11.0, "start"}, solid_fill("#b35806"),
               Layer::label, "banner", -1, {}});
  }
}

}  // namespace

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool point_in_polygon(Point p, const std::vector<Point>& poly, double eps) {
  const std::size_t n = poly.size();
  if (n == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (segment_distance(p, poly[i], poly[(i + 1) % n]) <= eps) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = poly[i];
    const Point b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
  }
  return inside;
}

bool point_in_rings(Point p, const std::vector<std::vector<Point>>& rings) {
  bool inside = false;
  for (const auto& ring : rings) {
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
      const Point a = ring[i];
      const Point b = ring[j];
      if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
    }
  }
  return inside;
}

std::vector<std::vector<Point>> bubble_outline(const std::vector<Point>& members, double radius, double step) {
  if (members.empty()) return {};
  const auto tree = spanning_tree(members);
  const double connector = 0.5 * radius;
  auto field = [&](Point p) {
    double f = std::numeric_limits<double>::infinity();
    for (const Point& c : members) f = std::min(f, length(sub(p, c)) - radius);
    for (const auto& [a, b] : tree) f = std::min(f, segment_distance(p, members[a], members[b]) - connector);
    return f;
  };

  double min_x = members[0].x, max_x = members[0].x, min_y = members[0].y, max_y = members[0].y;
  for (const Point& p : members) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double pad = radius + 2.0 * step;
  min_x -= pad;
  min_y -= pad;
  const auto nx = static_cast<std::size_t>(std::ceil((max_x + pad - min_x) / step));
  const auto ny = static_cast<std::size_t>(std::ceil((max_y + pad - min_y) / step));
  auto corner = [&](std::size_t i, std::size_t j) {
    return Point{min_x + step * static_cast<double>(i), min_y + step * static_cast<double>(j)};
  };
  std::vector<double> f((nx + 1) * (ny + 1));
  for (std::size_t j = 0; j <= ny; ++j) {
    for (std::size_t i = 0; i <= nx; ++i) f[j * (nx + 1) + i] = field(corner(i, j));
  }
  auto value = [&](std::size_t i, std::size_t j) { return f[j * (nx + 1) + i]; };
  // Grid edge ids: 2*corner for the edge to the right, 2*corner+1 upwards.
  auto h_edge = [&](std::size_t i, std::size_t j) { return 2 * (j * (nx + 1) + i); };
  auto v_edge = [&](std::size_t i, std::size_t j) { return 2 * (j * (nx + 1) + i) + 1; };
  std::unordered_map<std::size_t, Point> crossing_point;
  auto crossing = [&](std::size_t id, Point pa, double fa, Point pb, double fb) {
    if (!crossing_point.count(id)) {
      const double t = fa / (fa - fb);
      crossing_point[id] = add(pa, scale(sub(pb, pa), t));
    }
    return id;
  };

  std::vector<std::pair<std::size_t, std::size_t>> segments;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const Point p[4] = {corner(i, j), corner(i + 1, j), corner(i + 1, j + 1), corner(i, j + 1)};
      const double v[4] = {value(i, j), value(i + 1, j), value(i + 1, j + 1), value(i, j + 1)};
      const bool in[4] = {v[0] < 0, v[1] < 0, v[2] < 0, v[3] < 0};
      // Cell sides: 0 bottom (c0-c1), 1 right (c1-c2), 2 top (c3-c2), 3 left (c0-c3).
      std::size_t side_id[4] = {};
      bool cut[4] = {in[0] != in[1], in[1] != in[2], in[3] != in[2], in[0] != in[3]};
      if (cut[0]) side_id[0] = crossing(h_edge(i, j), p[0], v[0], p[1], v[1]);
      if (cut[1]) side_id[1] = crossing(v_edge(i + 1, j), p[1], v[1], p[2], v[2]);
      if (cut[2]) side_id[2] = crossing(h_edge(i, j + 1), p[3], v[3], p[2], v[2]);
      if (cut[3]) side_id[3] = crossing(v_edge(i, j), p[0], v[0], p[3], v[3]);
      std::vector<int> sides;
      for (int s = 0; s < 4; ++s) {
        if (cut[s]) sides.push_back(s);
      }
      if (sides.size() == 2) {
        segments.emplace_back(side_id[sides[0]], side_id[sides[1]]);
      } else if (sides.size() == 4) {
        const bool centre_in = field(add(p[0], Point{step / 2, step / 2})) < 0;
        if (centre_in == in[0]) {
          segments.emplace_back(side_id[0], side_id[1]);
          segments.emplace_back(side_id[2], side_id[3]);
        } else {
          segments.emplace_back(side_id[3], side_id[0]);
          segments.emplace_back(side_id[1], side_id[2]);
        }
      }
    }
  }

  std::unordered_map<std::size_t, std::vector<std::size_t>> touching;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    touching[segments[s].first].push_back(s);
    touching[segments[s].second].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<std::vector<Point>> rings;
  for (std::size_t start = 0; start < segments.size(); ++start) {
    if (used[start]) continue;
    std::vector<Point> ring;
    used[start] = true;
    const std::size_t first = segments[start].first;
    std::size_t at = segments[start].second;
    ring.push_back(crossing_point[first]);
    while (at != first) {
      ring.push_back(crossing_point[at]);
      std::size_t next = segments.size();
      for (std::size_t s : touching[at]) {
        if (!used[s]) {
          next = s;
          break;
        }
      }
      if (next == segments.size()) break;
      used[next] = true;
      at = segments[next].first == at ? segments[next].second : segments[next].first;
    }
    if (ring.size() >= 3) rings.push_back(std::move(ring));
  }
  return rings;
}

std::vector<std::string> hierarchical_colors(const Graph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::vector<std::size_t>> children(n);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> roots;
  const Adjacency adj = undirected_adjacency(graph);
  if (graph.directed()) {
    std::vector<int> indeg(n, 0);
    for (const Edge& e : graph.edges()) ++indeg[e.target];
    for (std::size_t v = 0; v < n; ++v) {
      if (indeg[v] == 0) roots.push_back(v);
    }
  }
  std::vector<std::size_t> depth(n, 0);
  std::deque<std::size_t> queue;
  auto start = [&](std::size_t r) {
    seen[r] = true;
    queue.push_back(r);
  };
  auto drain = [&] {
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t i = adj.offsets[v]; i < adj.offsets[v + 1]; ++i) {
        const std::size_t w = adj.neighbors[i];
        if (seen[w]) continue;
        seen[w] = true;
        depth[w] = depth[v] + 1;
        children[v].push_back(w);
        queue.push_back(w);
      }
    }
  };
  for (std::size_t r : roots) start(r);
  drain();
  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v]) continue;
    roots.push_back(v);
    start(v);
    drain();
  }

  // Each node owns a hue range; children split the central 75% of it.
  std::vector<std::pair<double, double>> range(n);
  std::vector<std::string> out(n);
  const double root_width = 360.0 / static_cast<double>(std::max<std::size_t>(roots.size(), 1));
  std::deque<std::size_t> order;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    range[roots[i]] = {root_width * static_cast<double>(i), root_width * static_cast<double>(i + 1)};
    order.push_back(roots[i]);
  }
  while (!order.empty()) {
    const std::size_t v = order.front();
    order.pop_front();
    const auto [lo, hi] = range[v];
    const double d = static_cast<double>(depth[v]);
    const double sat = depth[v] == 0 ? 0.0 : std::max(0.25, 0.65 - 0.08 * d);
    out[v] = hsl_to_hex(0.5 * (lo + hi), sat, std::min(0.85, 0.45 + 0.07 * d));
    if (children[v].empty()) continue;
    const double width = hi - lo;
    const double inner_lo = lo + 0.125 * width;
    const double slice = 0.75 * width / static_cast<double>(children[v].size());
    for (std::size_t i = 0; i < children[v].size(); ++i) {
      range[children[v][i]] = {inner_lo + slice * static_cast<double>(i), inner_lo + slice * static_cast<double>(i + 1)};
      order.push_back(children[v][i]);
    }
  }
  return out;
}

Scene render(const Graph& graph, const RenderPlan& plan, const RenderOptions& options) {
  check_plan(graph, plan);
  Scene scene;
  scene.width = options.canvas.width;
  scene.height = options.canvas.height;
  scene.statements = plan.statements;
  scene.unimplemented = plan.unimplemented;
  const double banner = banner_height(plan, options);

  if (plan.overlays.count(OverlayKind::edge_bars)) {
    const bool any = std::any_of(graph.edges().begin(), graph.edges().end(),
                                 [](const Edge& e) { return !e.attributes.empty(); });
    if (!any) throw MissingData("edge bar charts need per-edge attribute vectors");
  }

  if (plan.vis_type == VisType::matrix || plan.layout == LayoutKind::matrix) {
    draw_matrix(scene, graph, options, banner);
    if (graph.timestep_count() > 1) scene.notes.push_back("matrix shows the union of all timesteps");
    draw_banner(scene, plan, options);
    scene.finalize();
    return scene;
  }

  PanelContext ctx{plan, options, options.canvas, {}, {}, 0.0};
  if (!plan.overlays.empty() || plan.layout == LayoutKind::clustered || graph.has_clusters()) {
    ctx.clusters = cluster_assignment(graph);
  }
  if (plan.annotations.count(AnnotationKind::hierarchical_colors)) ctx.tree_colors = hierarchical_colors(graph);
  double max_abs = 0.0;
  for (const Edge& e : graph.edges()) {
    for (double a : e.attributes) max_abs = std::max(max_abs, std::abs(a));
  }
  if (max_abs > 0) ctx.bar_scale = options.bar_height / max_abs;

  const int steps = graph.timestep_count();
  if (steps == 1 && !plan.annotations.count(AnnotationKind::small_multiples)) {
    // Room for the banner plus a node label above the topmost node.
    if (banner > 0) ctx.canvas.inset_top = banner + options.node_radius + 12.0;
    scene.positions = panel_positions(graph, ctx);
    draw_panel(scene, graph, scene.positions, ctx);
    draw_banner(scene, plan, options);
    scene.finalize();
    return scene;
  }

  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(steps))));
  const int rows = (steps + cols - 1) / cols;
  const double top = std::max(banner, 0.0);
  const double pw = options.canvas.width / cols;
  const double ph = (options.canvas.height - top) / rows;
  ctx.canvas = Canvas{pw, ph, 0.08};
  const bool fixed = plan.annotations.count(AnnotationKind::fixed_layout) > 0;
  std::vector<Point> shared;
  if (fixed) shared = panel_positions(graph.union_graph(), ctx);
  if (fixed) scene.notes.push_back("layout computed once on the union of all timesteps");

  for (int t = 0; t < steps; ++t) {
    const Graph slice = graph.slice(t);
    const Rect frame{pw * (t % cols), top + ph * (t / cols), pw, ph};
    Panel panel{t, frame, fixed ? shared : panel_positions(slice, ctx)};
    Scene local;
    draw_panel(local, slice, panel.positions, ctx);
    Style border;
    border.stroke = "#cccccc";
    local.add({Rect{0.0, 0.0, pw, ph}, border, Layer::overlay, "panel", t, {}});
    local.add({Text{{6.0, 14.0}, "t = " + std::to_string(t), 11.0, "start"}, solid_fill("#222222"), Layer::label,
               "label", -1, {}});
    for (Primitive& p : local.items) {
      std::visit(Translator{frame.x, frame.y}, p.shape);
      scene.add(std::move(p));
    }
    scene.panels.push_back(std::move(panel));
  }
  draw_banner(scene, plan, options);
  scene.finalize();
  return scene;
}

}  // namespace guidex
