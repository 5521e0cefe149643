#include "guidex/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

namespace guidex {

std::string_view to_string(GraphTypeTag tag) {
  switch (tag) {
    case GraphTypeTag::undirected: return "undirected";
    case GraphTypeTag::directed: return "directed";
    case GraphTypeTag::dag: return "dag";
    case GraphTypeTag::tree: return "tree";
    case GraphTypeTag::flow_graph: return "flow_graph";
    case GraphTypeTag::trajectory: return "trajectory";
  }
  return "?";
}

GraphTypeTag graph_type_from_string(std::string_view name) {
  for (GraphTypeTag tag : kAllGraphTypes) {
    if (to_string(tag) == name) return tag;
  }
  throw ValidationError("unknown graph type '" + std::string(name) + "'");
}

Graph::Graph(bool directed, int timestep_count) : directed_(directed), timestep_count_(1) {
  set_timestep_count(timestep_count);
}

void Graph::set_timestep_count(int count) {
  if (count < 1) throw InvalidGraph("timestep_count must be >= 1");
  for (const Edge& e : edges_) {
    if (e.timestep && *e.timestep >= count) {
      throw InvalidGraph("timestep_count would orphan an edge timestep");
    }
  }
  timestep_count_ = count;
}

void Graph::declare_type(GraphTypeTag tag) {
  if (tag != GraphTypeTag::flow_graph && tag != GraphTypeTag::trajectory) {
    throw InvalidGraph("only flow_graph and trajectory can be declared");
  }
  declared_.insert(tag);
}

std::size_t Graph::add_node(Node node) {
  if (node.id.empty()) throw InvalidGraph("node id must not be empty");
  if (node.cluster && *node.cluster < 0) throw InvalidGraph("cluster id must be >= 0");
  auto [it, inserted] = index_.emplace(node.id, nodes_.size());
  if (!inserted) throw InvalidGraph("duplicate node id '" + node.id + "'");
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

std::size_t Graph::PairHash::operator()(const PairKey& k) const noexcept {
  std::size_t h = std::hash<std::size_t>{}(k.a);
  h ^= std::hash<std::size_t>{}(k.b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= std::hash<int>{}(k.t) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Graph::PairKey Graph::key_for(std::size_t source, std::size_t target,
                              std::optional<int> timestep) const {
  if (!directed_ && target < source) std::swap(source, target);
  return PairKey{source, target, timestep.value_or(-1)};
}

bool Graph::add_edge(Edge edge) {
  if (edge.source >= nodes_.size() || edge.target >= nodes_.size()) {
    throw InvalidGraph("edge endpoint out of range");
  }
  if (edge.source == edge.target) {
    throw UnsupportedFeature("self-loop on node '" + nodes_[edge.source].id + "'");
  }
  if (edge.timestep && (*edge.timestep < 0 || *edge.timestep >= timestep_count_)) {
    throw InvalidGraph("edge timestep out of range");
  }
  auto key = key_for(edge.source, edge.target, edge.timestep);
  auto [it, inserted] = edge_index_.emplace(key, edges_.size());
  if (!inserted) return false;
  edges_.push_back(std::move(edge));
  return true;
}

std::optional<std::size_t> Graph::find_node(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Graph::has_edge(std::size_t source, std::size_t target, std::optional<int> timestep) const {
  return edge_index_.contains(key_for(source, target, timestep));
}

bool Graph::has_positions() const {
  return !nodes_.empty() &&
         std::all_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.position.has_value(); });
}

bool Graph::has_clusters() const {
  return std::any_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.cluster.has_value(); });
}

Graph Graph::slice(int timestep) const {
  Graph out(directed_, 1);
  out.declared_ = declared_;
  for (const Node& n : nodes_) out.add_node(n);
  for (const Edge& e : edges_) {
    if (e.timestep && *e.timestep != timestep) continue;
    Edge copy = e;
    copy.timestep.reset();
    out.add_edge(std::move(copy));
  }
  return out;
}

Graph Graph::union_graph() const {
  Graph out(directed_, 1);
  out.declared_ = declared_;
  for (const Node& n : nodes_) out.add_node(n);
  for (const Edge& e : edges_) {
    Edge copy = e;
    copy.timestep.reset();
    out.add_edge(std::move(copy));
  }
  return out;
}

namespace {

struct CanonicalEdge {
  std::string source;
  std::string target;
  int timestep;
  const Edge* edge;

  auto key() const { return std::tie(source, target, timestep); }
};

std::vector<CanonicalEdge> canonical_edges(const Graph& g) {
  std::vector<CanonicalEdge> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    std::string s = g.node(e.source).id;
    std::string t = g.node(e.target).id;
    if (!g.directed() && t < s) std::swap(s, t);
    out.push_back({std::move(s), std::move(t), e.timestep.value_or(-1), &e});
  }
  std::sort(out.begin(), out.end(),
            [](const CanonicalEdge& a, const CanonicalEdge& b) { return a.key() < b.key(); });
  return out;
}

}  // namespace

bool operator==(const Graph& a, const Graph& b) {
  if (a.directed_ != b.directed_ || a.timestep_count_ != b.timestep_count_ ||
      a.declared_ != b.declared_ || a.node_count() != b.node_count() ||
      a.edge_count() != b.edge_count()) {
    return false;
  }
  for (const Node& n : a.nodes_) {
    auto other = b.find_node(n.id);
    if (!other || !(b.node(*other) == n)) return false;
  }
  auto ea = canonical_edges(a);
  auto eb = canonical_edges(b);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].key() != eb[i].key()) return false;
    const Edge& x = *ea[i].edge;
    const Edge& y = *eb[i].edge;
    if (x.weight != y.weight || x.attributes != y.attributes || x.directed != y.directed) return false;
  }
  return true;
}

Adjacency undirected_adjacency(const Graph& graph) {
  const std::size_t n = graph.node_count();
  Adjacency adj;
  adj.offsets.assign(n + 1, 0);
  for (const Edge& e : graph.edges()) {
    ++adj.offsets[e.source + 1];
    ++adj.offsets[e.target + 1];
  }
  std::partial_sum(adj.offsets.begin(), adj.offsets.end(), adj.offsets.begin());
  adj.neighbors.resize(adj.offsets.back());
  std::vector<std::size_t> fill(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const Edge& e : graph.edges()) {
    adj.neighbors[fill[e.source]++] = e.target;
    adj.neighbors[fill[e.target]++] = e.source;
  }
  return adj;
}

bool is_acyclic(const Graph& graph) {
  // Kahn's algorithm on the directed edge set.
  const std::size_t n = graph.node_count();
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> out(n);
  for (const Edge& e : graph.edges()) {
    out[e.source].push_back(e.target);
    ++indegree[e.target];
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t w : out[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  return seen == n;
}

bool is_weakly_connected(const Graph& graph) {
  const std::size_t n = graph.node_count();
  if (n == 0) return true;
  Adjacency adj = undirected_adjacency(graph);
  std::vector<bool> visited(n, false);
  std::vector<std::size_t> stack{0};
  visited[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t i = adj.offsets[v]; i < adj.offsets[v + 1]; ++i) {
      std::size_t w = adj.neighbors[i];
      if (!visited[w]) {
        visited[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

namespace {

GraphMetrics metrics_of_static(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw DegenerateGraph("density is undefined for fewer than 2 nodes");
  GraphMetrics m;
  m.node_count = n;
  m.edge_count = g.edge_count();
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  m.density = g.directed() ? static_cast<double>(m.edge_count) / pairs
                           : 2.0 * static_cast<double>(m.edge_count) / pairs;
  if (g.directed()) {
    m.detected_types.insert(GraphTypeTag::directed);
    if (is_acyclic(g)) {
      m.detected_types.insert(GraphTypeTag::dag);
      if (m.edge_count == n - 1 && is_weakly_connected(g)) {
        m.detected_types.insert(GraphTypeTag::tree);
      }
    }
  } else {
    m.detected_types.insert(GraphTypeTag::undirected);
  }
  // Declared flow_graph/trajectory sit below directed in the lattice.
  if (g.directed()) {
    for (GraphTypeTag tag : g.declared_types()) m.detected_types.insert(tag);
  }
  if (g.has_clusters()) {
    std::set<int> ids;
    for (const Node& node : g.nodes()) {
      if (node.cluster) ids.insert(*node.cluster);
    }
    m.cluster_count = static_cast<int>(ids.size());
  }
  return m;
}

}  // namespace

GraphMetrics compute_metrics(const Graph& graph) {
  GraphMetrics m = graph.timestep_count() == 1 ? metrics_of_static(graph)
                                                : metrics_of_static(graph.slice(0));
  m.timestep_count = graph.timestep_count();
  return m;
}

std::vector<GraphMetrics> compute_timestep_metrics(const Graph& graph) {
  std::vector<GraphMetrics> out;
  out.reserve(static_cast<std::size_t>(graph.timestep_count()));
  for (int t = 0; t < graph.timestep_count(); ++t) {
    GraphMetrics m = metrics_of_static(graph.slice(t));
    m.timestep_count = graph.timestep_count();
    out.push_back(std::move(m));
  }
  return out;
}

GraphTypeSet compatibility_closure(const GraphTypeSet& detected) {
  GraphTypeSet out = detected;
  for (GraphTypeTag tag : detected) {
    switch (tag) {
      case GraphTypeTag::tree:
        out.insert(GraphTypeTag::dag);
        out.insert(GraphTypeTag::directed);
        break;
      case GraphTypeTag::dag:
      case GraphTypeTag::flow_graph:
      case GraphTypeTag::trajectory:
        out.insert(GraphTypeTag::directed);
        break;
      case GraphTypeTag::directed:
      case GraphTypeTag::undirected:
        break;
    }
  }
  return out;
}

}  // namespace guidex
