#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <iterator>
#include <utility>
#include <vector>

#include "guidex/generate.hpp"
#include "guidex/graph.hpp"

namespace guidex::testing {

using EdgeList = std::vector<std::pair<int, int>>;

inline Graph build_graph(int n, const EdgeList& edges, bool directed) {
  Graph g(directed);
  for (int i = 0; i < n; ++i) g.add_node("n" + std::to_string(i));
  for (auto [u, v] : edges) g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  return g;
}

/// All ordered pairs (i, j), i != j, in a fixed order; bit k of a mask picks pair k.
inline EdgeList ordered_pairs(int n) {
  EdgeList out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) out.emplace_back(i, j);
    }
  }
  return out;
}

/// Acyclic iff some node order has every edge pointing forward.
inline bool acyclic_by_permutation(int n, const EdgeList& edges) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> pos(static_cast<std::size_t>(n));
  do {
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    if (std::all_of(edges.begin(), edges.end(), [&](auto e) {
          return pos[static_cast<std::size_t>(e.first)] < pos[static_cast<std::size_t>(e.second)];
        })) {
      return true;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

inline bool connected_by_union_find(int n, const EdgeList& edges) {
  if (n == 0) return true;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  int components = n;
  for (auto [u, v] : edges) {
    const int a = find(u);
    const int b = find(v);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  return components == 1;
}

inline EdgeList random_edges(Rng& rng, int n, double p, bool directed) {
  EdgeList out;
  for (int i = 0; i < n; ++i) {
    for (int j = directed ? 0 : i + 1; j < n; ++j) {
      if (i != j && rng.unit() < p) out.emplace_back(i, j);
    }
  }
  return out;
}

/// Random DAG: edges only from lower to higher rank of a random permutation.
inline EdgeList random_dag(Rng& rng, int n, double p) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
  }
  EdgeList out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.unit() < p) out.emplace_back(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

/// Valid generation spec with at most `max_nodes` nodes.
inline GenerationSpec random_spec(Rng& rng, int max_nodes, int max_timesteps = 3) {
  GenerationSpec s;
  s.node_count = 4 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_nodes - 3)));
  s.cluster_count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, s.node_count / 4))));
  const int per_cluster = s.node_count / s.cluster_count;
  const int max_attach = std::max(1, (per_cluster - 1) / 2);
  s.attachment_edges = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_attach)));
  while (s.attachment_edges * s.cluster_count >= s.node_count) --s.attachment_edges;
  s.timestep_count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_timesteps)));
  s.directed = rng.below(2) == 1;
  s.seed = rng.next();
  return s;
}

inline std::string random_label(Rng& rng) {
  static const char* pieces[] = {"a", "B", "7", " ", "&", "<", ">", "\"", "'", "\t", "\n", "\xC3\xA9", "\xE2\x86\x92", "x y"};
  std::string out;
  const auto len = 1 + rng.below(6);
  for (std::uint64_t i = 0; i < len; ++i) out += pieces[rng.below(std::size(pieces))];
  return out;
}

/// Random graph exercising every attribute the GraphML layer carries.
inline Graph random_rich_graph(Rng& rng, int max_nodes) {
  const bool directed = rng.below(2) == 1;
  const int timesteps = 1 + static_cast<int>(rng.below(3));
  Graph g(directed, timesteps);
  const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_nodes - 1)));
  for (int i = 0; i < n; ++i) {
    Node node{"v" + std::to_string(rng.below(1000)) + "_" + std::to_string(i), {}, {}, {}};
    if (rng.below(2)) node.label = random_label(rng);
    if (rng.below(2)) node.position = Point{rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)};
    if (rng.below(2)) node.cluster = static_cast<int>(rng.below(4));
    g.add_node(std::move(node));
  }
  const auto attr_count = rng.below(3);
  const auto edges = static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * n)));
  for (int k = 0; k < edges; ++k) {
    const auto u = rng.below(static_cast<std::uint64_t>(n));
    const auto v = rng.below(static_cast<std::uint64_t>(n));
    if (u == v) continue;
    Edge e{u, v, {}, {}, {}, {}};
    if (rng.below(2)) e.weight = rng.uniform(0.0, 100.0) / 3.0;
    for (std::uint64_t a = 0; a < attr_count; ++a) e.attributes.push_back(rng.uniform(-5.0, 5.0));
    if (timesteps > 1 && rng.below(3)) e.timestep = static_cast<int>(rng.below(static_cast<std::uint64_t>(timesteps)));
    if (rng.below(5) == 0) e.directed = rng.below(2) == 1;
    g.add_edge(std::move(e));
  }
  if (directed && rng.below(3) == 0) g.declare_type(GraphTypeTag::flow_graph);
  if (directed && rng.below(4) == 0) g.declare_type(GraphTypeTag::trajectory);
  return g;
}

}  // namespace guidex::testing
