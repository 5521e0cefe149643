#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "guidex/error.hpp"

namespace guidex {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class GraphTypeTag { undirected, directed, dag, tree, flow_graph, trajectory };

inline constexpr GraphTypeTag kAllGraphTypes[] = {
    GraphTypeTag::undirected, GraphTypeTag::directed,   GraphTypeTag::dag,
    GraphTypeTag::tree,       GraphTypeTag::flow_graph, GraphTypeTag::trajectory};

std::string_view to_string(GraphTypeTag tag);
/// Throws ValidationError for unknown names.
GraphTypeTag graph_type_from_string(std::string_view name);

using GraphTypeSet = std::set<GraphTypeTag>;

struct Node {
  std::string id;
  std::optional<std::string> label;
  std::optional<Point> position;
  std::optional<int> cluster;

  friend bool operator==(const Node&, const Node&) = default;
};

/// An edge between two node indices. An edge without a timestep exists in
/// every time slice; an edge with a timestep exists only in that slice.
struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  std::optional<double> weight;
  std::vector<double> attributes;
  std::optional<int> timestep;
  /// Per-edge direction override as carried by GraphML; the graph-level
  /// flag stays authoritative for metrics.
  std::optional<bool> directed;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple graph: no self-loops, parallel edges collapsed per time slice.
class Graph {
 public:
  explicit Graph(bool directed = false, int timestep_count = 1);

  bool directed() const noexcept { return directed_; }
  int timestep_count() const noexcept { return timestep_count_; }
  void set_timestep_count(int count);

  const GraphTypeSet& declared_types() const noexcept { return declared_; }
  /// Only flow_graph and trajectory can be declared; the others are detected.
  void declare_type(GraphTypeTag tag);

  /// Throws InvalidGraph on duplicate or empty id.
  std::size_t add_node(Node node);
  std::size_t add_node(std::string id) { return add_node(Node{std::move(id), {}, {}, {}}); }

  /// Returns false when the edge collapses into an existing one.
  /// Throws UnsupportedFeature on self-loops, InvalidGraph on bad endpoints
  /// or out-of-range timesteps.
  bool add_edge(Edge edge);
  bool add_edge(std::size_t source, std::size_t target) {
    return add_edge(Edge{source, target, {}, {}, {}, {}});
  }

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  Node& node(std::size_t index) { return nodes_.at(index); }
  const Node& node(std::size_t index) const { return nodes_.at(index); }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::optional<std::size_t> find_node(std::string_view id) const;
  bool has_edge(std::size_t source, std::size_t target,
                std::optional<int> timestep = std::nullopt) const;

  bool has_positions() const;
  bool has_clusters() const;

  /// Edges alive in the given slice, timestep cleared, timestep_count 1.
  Graph slice(int timestep) const;
  /// Distinct endpoint pairs over all slices, timestep cleared.
  Graph union_graph() const;

  /// Order-insensitive comparison: nodes by id, edges by endpoint ids.
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  struct PairKey {
    std::size_t a;
    std::size_t b;
    int t;
    friend bool operator==(const PairKey&, const PairKey&) = default;
  };
  struct PairHash {
    std::size_t operator()(const PairKey& k) const noexcept;
  };
  PairKey key_for(std::size_t source, std::size_t target, std::optional<int> timestep) const;

  bool directed_;
  int timestep_count_;
  GraphTypeSet declared_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<PairKey, std::size_t, PairHash> edge_index_;
};

struct GraphMetrics {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double density = 0.0;
  GraphTypeSet detected_types;
  int timestep_count = 1;
  std::optional<int> cluster_count;

  friend bool operator==(const GraphMetrics&, const GraphMetrics&) = default;
};

/// Metrics of the timestep-0 graph. Throws DegenerateGraph when N < 2.
GraphMetrics compute_metrics(const Graph& graph);
/// One entry per time slice.
std::vector<GraphMetrics> compute_timestep_metrics(const Graph& graph);

/// Upward closure of detected types under tree < dag < directed and
/// flow_graph, trajectory < directed.
GraphTypeSet compatibility_closure(const GraphTypeSet& detected);

bool is_acyclic(const Graph& graph);
bool is_weakly_connected(const Graph& graph);

/// Adjacency in compressed form, ignoring timesteps and direction.
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> neighbors;

  std::size_t degree(std::size_t v) const { return offsets[v + 1] - offsets[v]; }
};
Adjacency undirected_adjacency(const Graph& graph);

}  // namespace guidex
