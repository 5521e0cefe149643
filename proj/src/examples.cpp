#include "guidex/examples.hpp"

#include <initializer_list>
#include <tuple>
#include <utility>

#include "guidex/generate.hpp"

namespace guidex {
namespace {

using Pairs = std::initializer_list<std::pair<int, int>>;

Graph with_nodes(bool directed, int count, std::initializer_list<const char*> labels = {}) {
  Graph g(directed);
  auto label = labels.begin();
  for (int i = 0; i < count; ++i) {
    Node n{"n" + std::to_string(i), {}, {}, {}};
    if (label != labels.end()) n.label = *label++;
    g.add_node(std::move(n));
  }
  return g;
}

void add_pairs(Graph& g, Pairs pairs) {
  for (auto [s, t] : pairs) g.add_edge(static_cast<std::size_t>(s), static_cast<std::size_t>(t));
}

Graph directed_example() {
  Graph g = with_nodes(true, 8, {"A", "B", "C", "D", "E", "F", "G", "H"});
  add_pairs(g, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3}, {1, 6}, {6, 7}, {7, 4}});
  return g;
}

Graph undirected_example() {
  Graph g(false);
  const int clusters[] = {0, 0, 0, 0, 1, 1, 1, 2, 2, 2};
  for (int i = 0; i < 10; ++i) {
    g.add_node(Node{"n" + std::to_string(i), std::string(1, static_cast<char>('a' + i)), {}, clusters[i]});
  }
  const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6},
                                       {4, 6}, {7, 8}, {8, 9}, {7, 9}, {3, 4}, {6, 7}, {0, 9}};
  int k = 0;
  for (auto [s, t] : pairs) {
    Edge e{static_cast<std::size_t>(s), static_cast<std::size_t>(t), {}, {}, {}, {}};
    // Three synthetic attributes per edge for the multivariate mappings.
    e.attributes = {1.0 + (k % 3), 0.5 + 0.25 * (k % 5), 2.0 - 0.125 * k};
    g.add_edge(std::move(e));
    ++k;
  }
  return g;
}

Graph dag_example() {
  Graph g = with_nodes(true, 7, {"parse", "lex", "check", "lower", "opt", "emit", "link"});
  add_pairs(g, {{1, 0}, {0, 2}, {0, 3}, {2, 3}, {3, 4}, {4, 5}, {3, 5}, {5, 6}});
  return g;
}

Graph tree_example() {
  Graph g = with_nodes(true, 7, {"root", "l", "r", "ll", "lr", "rl", "rr"});
  add_pairs(g, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
  return g;
}

Graph flow_example() {
  Graph g(true);
  const Point sites[] = {{100, 100}, {400, 80}, {700, 150}, {250, 400}, {600, 450}, {450, 700}};
  const char* names[] = {"Hamburg", "Berlin", "Dresden", "Cologne", "Munich", "Zurich"};
  for (int i = 0; i < 6; ++i) {
    g.add_node(Node{"n" + std::to_string(i), names[i], sites[i], {}});
  }
  const std::tuple<int, int, double> flows[] = {{0, 1, 120.0}, {1, 2, 45.0}, {0, 3, 80.0},
                                                {3, 4, 60.0},  {1, 4, 30.0}, {4, 5, 25.0},
                                                {2, 4, 15.0},  {3, 5, 10.0}};
  for (auto [s, t, w] : flows) {
    g.add_edge(Edge{static_cast<std::size_t>(s), static_cast<std::size_t>(t), w, {}, {}, {}});
  }
  g.declare_type(GraphTypeTag::flow_graph);
  return g;
}

Graph trajectory_example() {
  Graph g(true);
  const Point track[] = {{80, 700}, {180, 560}, {320, 520}, {420, 380},
                         {560, 360}, {640, 220}, {780, 180}, {900, 90}};
  for (int i = 0; i < 8; ++i) {
    g.add_node(Node{"p" + std::to_string(i), "t" + std::to_string(i), track[i], {}});
  }
  for (std::size_t i = 0; i + 1 < 8; ++i) g.add_edge(i, i + 1);
  g.declare_type(GraphTypeTag::trajectory);
  return g;
}

}  // namespace

Graph example_graph(GraphTypeTag kind) {
  switch (kind) {
    case GraphTypeTag::directed: return directed_example();
    case GraphTypeTag::undirected: return undirected_example();
    case GraphTypeTag::dag: return dag_example();
    case GraphTypeTag::tree: return tree_example();
    case GraphTypeTag::flow_graph: return flow_example();
    case GraphTypeTag::trajectory: return trajectory_example();
  }
  return directed_example();
}

std::string example_description(GraphTypeTag kind) {
  switch (kind) {
    case GraphTypeTag::directed: return "Example directed graph with two cycles";
    case GraphTypeTag::undirected: return "Example undirected graph with 3 clusters and edge attributes";
    case GraphTypeTag::dag: return "Example directed acyclic graph (build pipeline)";
    case GraphTypeTag::tree: return "Example tree (binary, depth 2)";
    case GraphTypeTag::flow_graph: return "Example flow map with weighted edges between six cities";
    case GraphTypeTag::trajectory: return "Example trajectory with eight positioned samples";
  }
  return {};
}

Graph use_case_graph(UseCase which) {
  const int target = which == UseCase::sparse ? kUseCaseSparseEdges : kUseCaseDenseEdges;
  Rng rng(which == UseCase::sparse ? 0x5EED0637ULL : 0x5EED1012ULL);
  Graph g(true);
  for (int i = 0; i < kUseCaseNodes; ++i) g.add_node("n" + std::to_string(i));
  // Random spanning tree with random orientation keeps the graph connected.
  for (std::size_t i = 1; i < static_cast<std::size_t>(kUseCaseNodes); ++i) {
    const std::size_t j = rng.below(i);
    if (rng.below(2) == 0) {
      g.add_edge(i, j);
    } else {
      g.add_edge(j, i);
    }
  }
  while (g.edge_count() < static_cast<std::size_t>(target)) {
    const std::size_t u = rng.below(kUseCaseNodes);
    const std::size_t v = rng.below(kUseCaseNodes);
    if (u != v) g.add_edge(u, v);
  }
  return g;
}

Graph preview_graph(bool directed) {
  Graph g(directed);
  const int clusters[] = {0, 0, 0, 1, 1, 1};
  for (int i = 0; i < 6; ++i) g.add_node(Node{"n" + std::to_string(i), {}, {}, clusters[i]});
  const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}};
  int k = 0;
  for (auto [s, t] : pairs) {
    Edge e{static_cast<std::size_t>(s), static_cast<std::size_t>(t), {}, {}, {}, {}};
    e.attributes = {1.0 + k % 3, 2.0 - 0.25 * k};
    g.add_edge(std::move(e));
    ++k;
  }
  return g;
}

}  // namespace guidex
