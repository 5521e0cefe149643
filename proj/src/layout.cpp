#include "guidex/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include "guidex/generate.hpp"

namespace guidex {

std::vector<Point> simulate_force_directed(const Graph& graph, const ForceParams& params,
                                           const std::vector<int>& group) {
  const std::size_t n = graph.node_count();
  if (n == 0) return {};
  if (n == 1) return {Point{0.0, 0.0}};
  if (!group.empty() && group.size() != n) throw ValidationError("one group entry per node is required");

  const Graph simple = graph.timestep_count() > 1 ? graph.union_graph() : graph;
  const Adjacency adj = undirected_adjacency(simple);
  const double k = params.ideal_length;
  const double side = std::sqrt(static_cast<double>(n)) * k;

  Rng rng(params.seed);
  std::vector<Point> pos(n);
  for (Point& p : pos) p = Point{rng.uniform(0.0, side), rng.uniform(0.0, side)};

  const kernels::ForceModel model{k, params.group_strength};
  std::vector<Point> disp(n);
  const double t0 = 0.1 * side + k;
  for (int it = 0; it < params.iterations; ++it) {
    kernels::accumulate_forces(pos, adj, group, model, disp);
    Point c{};
    for (const Point& p : pos) {
      c.x += p.x;
      c.y += p.y;
    }
    c.x /= static_cast<double>(n);
    c.y /= static_cast<double>(n);
    const double temperature = t0 * (1.0 - static_cast<double>(it) / params.iterations);
    for (std::size_t v = 0; v < n; ++v) {
      const double dx = disp[v].x - params.gravity * (pos[v].x - c.x);
      const double dy = disp[v].y - params.gravity * (pos[v].y - c.y);
      const double len = std::hypot(dx, dy);
      if (len <= 0.0) continue;
      const double step = std::min(len, temperature);
      pos[v].x += dx / len * step;
      pos[v].y += dy / len * step;
    }
  }
  return pos;
}

void fit_to_canvas(std::vector<Point>& positions, const Canvas& canvas) {
  if (positions.empty()) return;
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const Point& p : positions) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double avail_w = canvas.right() - canvas.left();
  const double avail_h = canvas.bottom() - canvas.top();
  const double w = max_x - min_x;
  const double h = max_y - min_y;
  double scale = std::numeric_limits<double>::infinity();
  if (w > 0) scale = std::min(scale, avail_w / w);
  if (h > 0) scale = std::min(scale, avail_h / h);
  if (!std::isfinite(scale)) scale = 0.0;
  const double cx = 0.5 * (canvas.left() + canvas.right());
  const double cy = 0.5 * (canvas.top() + canvas.bottom());
  const double mx = 0.5 * (min_x + max_x);
  const double my = 0.5 * (min_y + max_y);
  for (Point& p : positions) {
    p.x = std::clamp(cx + (p.x - mx) * scale, canvas.left(), canvas.right());
    p.y = std::clamp(cy + (p.y - my) * scale, canvas.top(), canvas.bottom());
  }
}

std::vector<Point> layout_force_directed(const Graph& graph, const Canvas& canvas, std::uint64_t seed,
                                         int iterations) {
  ForceParams params;
  params.seed = seed;
  params.iterations = iterations;
  auto pos = simulate_force_directed(graph, params);
  fit_to_canvas(pos, canvas);
  return pos;
}

std::vector<int> cluster_assignment(const Graph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<int> label(n);
  if (graph.has_clusters()) {
    for (std::size_t v = 0; v < n; ++v) label[v] = *graph.node(v).cluster;
  } else {
    // Modularity local moving: each node joins the neighboring community
    // with the largest gain until no node moves.
    const Adjacency adj = undirected_adjacency(graph.timestep_count() > 1 ? graph.union_graph() : graph);
    const double two_m = static_cast<double>(adj.neighbors.size());
    std::vector<double> total(n);
    for (std::size_t v = 0; v < n; ++v) {
      label[v] = static_cast<int>(v);
      total[v] = static_cast<double>(adj.degree(v));
    }
    for (int round = 0; round < 32 && two_m > 0; ++round) {
      bool changed = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (adj.degree(v) == 0) continue;
        const auto k = static_cast<double>(adj.degree(v));
        const int own = label[v];
        total[static_cast<std::size_t>(own)] -= k;
        std::map<int, double> links;
        for (std::size_t i = adj.offsets[v]; i < adj.offsets[v + 1]; ++i) links[label[adj.neighbors[i]]] += 1.0;
        auto gain = [&](int c) {
          auto it = links.find(c);
          return (it == links.end() ? 0.0 : it->second) - total[static_cast<std::size_t>(c)] * k / two_m;
        };
        int best = own;
        double best_gain = gain(own);
        for (const auto& [c, _] : links) {
          const double g = gain(c);
          if (g > best_gain + 1e-12) {
            best = c;
            best_gain = g;
          }
        }
        total[static_cast<std::size_t>(best)] += k;
        if (best != own) {
          label[v] = best;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }
  std::map<int, int> renumber;
  for (int& l : label) {
    auto [it, inserted] = renumber.emplace(l, static_cast<int>(renumber.size()));
    l = it->second;
  }
  return label;
}

std::vector<Point> layout_clustered(const Graph& graph, const Canvas& canvas, std::uint64_t seed, int iterations) {
  ForceParams params;
  params.seed = seed;
  params.iterations = iterations;
  params.group_strength = 0.5;
  auto pos = simulate_force_directed(graph, params, cluster_assignment(graph));
  fit_to_canvas(pos, canvas);
  return pos;
}

namespace {

struct DirectedAdjacency {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> in;
};

DirectedAdjacency directed_adjacency(const Graph& g) {
  DirectedAdjacency a{std::vector<std::vector<std::size_t>>(g.node_count()),
                      std::vector<std::vector<std::size_t>>(g.node_count())};
  for (const Edge& e : g.edges()) {
    a.out[e.source].push_back(e.target);
    a.in[e.target].push_back(e.source);
  }
  return a;
}

std::vector<std::size_t> greedy_fas_order(const Graph& g) {
  const std::size_t n = g.node_count();
  const DirectedAdjacency adj = directed_adjacency(g);
  std::vector<long> indeg(n);
  std::vector<long> outdeg(n);
  for (std::size_t v = 0; v < n; ++v) {
    indeg[v] = static_cast<long>(adj.in[v].size());
    outdeg[v] = static_cast<long>(adj.out[v].size());
  }
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  std::size_t remaining = n;
  auto remove = [&](std::size_t v) {
    removed[v] = true;
    --remaining;
    for (std::size_t w : adj.out[v]) --indeg[w];
    for (std::size_t w : adj.in[v]) --outdeg[w];
  };
  while (remaining > 0) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (!removed[v] && outdeg[v] == 0) {
          right.push_back(v);
          remove(v);
          progress = true;
        }
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (!removed[v] && indeg[v] == 0) {
          left.push_back(v);
          remove(v);
          progress = true;
        }
      }
    }
    if (remaining == 0) break;
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (removed[v]) continue;
      if (best == n || outdeg[v] - indeg[v] > outdeg[best] - indeg[best]) best = v;
    }
    left.push_back(best);
    remove(best);
  }
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

}  // namespace

std::vector<std::size_t> orthogonal_row_order(const Graph& graph) {
  const Graph g = graph.timestep_count() > 1 ? graph.union_graph() : graph;
  if (!g.directed() || !is_acyclic(g)) {
    if (!g.directed()) {
      std::vector<std::size_t> order(g.node_count());
      for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
      return order;
    }
    return greedy_fas_order(g);
  }
  const DirectedAdjacency adj = directed_adjacency(g);
  std::vector<std::size_t> indeg(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) indeg[v] = adj.in[v].size();
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t w : adj.out[v]) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  return order;
}

OrthogonalLayout layout_orthogonal(const Graph& graph, const Canvas& canvas) {
  const std::size_t n = graph.node_count();
  OrthogonalLayout out;
  out.row.assign(n, 0);
  out.column.assign(n, 0);
  const auto order = orthogonal_row_order(graph);
  for (std::size_t i = 0; i < order.size(); ++i) out.row[order[i]] = static_cast<int>(i);

  const Adjacency adj = undirected_adjacency(graph.timestep_count() > 1 ? graph.union_graph() : graph);
  out.column = out.row;
  for (int pass = 0; pass < 4; ++pass) {
    std::vector<std::pair<double, std::size_t>> bary(n);
    for (std::size_t v = 0; v < n; ++v) {
      double sum = out.column[v];
      for (std::size_t i = adj.offsets[v]; i < adj.offsets[v + 1]; ++i) sum += out.column[adj.neighbors[i]];
      bary[v] = {sum / static_cast<double>(1 + adj.degree(v)), v};
    }
    std::sort(bary.begin(), bary.end());
    for (std::size_t i = 0; i < n; ++i) out.column[bary[i].second] = static_cast<int>(i);
  }

  const double step_x = n > 1 ? (canvas.right() - canvas.left()) / static_cast<double>(n - 1) : 0.0;
  const double step_y = n > 1 ? (canvas.bottom() - canvas.top()) / static_cast<double>(n - 1) : 0.0;
  const double cx = 0.5 * (canvas.left() + canvas.right());
  const double cy = 0.5 * (canvas.top() + canvas.bottom());
  out.positions.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    out.positions[v] = n > 1 ? Point{canvas.left() + out.column[v] * step_x, canvas.top() + out.row[v] * step_y}
                             : Point{cx, cy};
  }
  for (const Edge& e : graph.edges()) {
    const Point s = out.positions[e.source];
    const Point t = out.positions[e.target];
    out.routes.push_back({s, Point{t.x, s.y}, t});
  }
  return out;
}

std::vector<kernels::Segment> edge_segments(const Graph& graph, const std::vector<Point>& positions) {
  std::vector<kernels::Segment> out;
  out.reserve(graph.edge_count());
  for (const Edge& e : graph.edges()) {
    out.push_back(kernels::Segment{positions[e.source], positions[e.target], e.source, e.target});
  }
  return out;
}

std::vector<Point> refine_crossings(const Graph& graph, std::vector<Point> positions, const Canvas& canvas,
                                    std::uint64_t seed, int rounds) {
  const std::size_t n = graph.node_count();
  if (n < 4) return positions;
  constexpr int kCandidates = 6;
  constexpr double kMinSeparation = 20.0;
  Rng rng(seed);
  auto score = [&](const std::vector<Point>& pos) { return kernels::count_crossings(edge_segments(graph, pos)); };
  auto better = [](const kernels::CrossingStats& a, const kernels::CrossingStats& b) {
    return a.crossings < b.crossings || (a.crossings == b.crossings && a.min_angle > b.min_angle + 1e-12);
  };
  kernels::CrossingStats current = score(positions);
  double radius = 0.15 * std::min(canvas.right() - canvas.left(), canvas.bottom() - canvas.top());
  for (int round = 0; round < rounds && current.crossings > 0; ++round) {
    for (std::size_t v = 0; v < n; ++v) {
      for (int c = 0; c < kCandidates; ++c) {
        const Point old = positions[v];
        Point p{std::clamp(old.x + rng.uniform(-radius, radius), canvas.left(), canvas.right()),
                std::clamp(old.y + rng.uniform(-radius, radius), canvas.top(), canvas.bottom())};
        bool crowded = false;
        for (std::size_t w = 0; w < n && !crowded; ++w) {
          crowded = w != v && std::hypot(p.x - positions[w].x, p.y - positions[w].y) < kMinSeparation;
        }
        if (crowded) continue;
        positions[v] = p;
        const auto candidate = score(positions);
        if (better(candidate, current)) {
          current = candidate;
        } else {
          positions[v] = old;
        }
      }
    }
    radius *= 0.6;
  }
  return positions;
}

}  // namespace guidex
