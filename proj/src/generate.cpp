#include "guidex/generate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace guidex {

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

double Rng::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

void validate(const GenerationSpec& spec) {
  if (spec.node_count < 2) throw InvalidGenerationSpec("node_count must be >= 2");
  if (spec.cluster_count < 1) throw InvalidGenerationSpec("cluster_count must be >= 1");
  if (spec.timestep_count < 1) throw InvalidGenerationSpec("timestep_count must be >= 1");
  if (spec.attachment_edges < 1) throw InvalidGenerationSpec("attachment_edges must be >= 1");
  // attachment_edges < node_count / cluster_count, compared exactly.
  if (static_cast<long long>(spec.attachment_edges) * spec.cluster_count >= spec.node_count) {
    throw InvalidGenerationSpec("attachment_edges must be < node_count / cluster_count");
  }
}

std::vector<int> cluster_sizes(int node_count, int cluster_count) {
  std::vector<int> sizes(static_cast<std::size_t>(cluster_count), node_count / cluster_count);
  for (int i = 0; i < node_count % cluster_count; ++i) ++sizes[static_cast<std::size_t>(i)];
  return sizes;
}

namespace {

// Preferential attachment inside one cluster. Node i attaches to
// min(m, i) distinct earlier nodes chosen with probability proportional to
// degree + 1, so the first arrivals (degree 0) stay reachable.
void attach_cluster(Graph& g, std::size_t first, int size, int m, Rng& rng) {
  std::vector<std::size_t> degree(static_cast<std::size_t>(size), 0);
  for (int i = 1; i < size; ++i) {
    const int want = std::min(m, i);
    std::vector<std::size_t> chosen;
    while (static_cast<int>(chosen.size()) < want) {
      std::uint64_t total = 0;
      for (int j = 0; j < i; ++j) {
        if (std::find(chosen.begin(), chosen.end(), j) == chosen.end()) total += degree[j] + 1;
      }
      std::uint64_t pick = rng.below(total);
      for (int j = 0; j < i; ++j) {
        if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
        const std::uint64_t w = degree[j] + 1;
        if (pick < w) {
          chosen.push_back(static_cast<std::size_t>(j));
          break;
        }
        pick -= w;
      }
    }
    for (std::size_t j : chosen) {
      g.add_edge(first + static_cast<std::size_t>(i), first + j);
      ++degree[static_cast<std::size_t>(i)];
      ++degree[j];
    }
  }
}

struct PlainEdge {
  std::size_t source;
  std::size_t target;
};

}  // namespace

Graph generate_graph(const GenerationSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);

  Graph base(spec.directed, 1);
  const auto sizes = cluster_sizes(spec.node_count, spec.cluster_count);
  std::vector<std::size_t> firsts;
  std::size_t next = 0;
  for (int c = 0; c < spec.cluster_count; ++c) {
    firsts.push_back(next);
    for (int i = 0; i < sizes[static_cast<std::size_t>(c)]; ++i) {
      base.add_node(Node{"n" + std::to_string(next), {}, {}, c});
      ++next;
    }
  }
  for (int c = 0; c < spec.cluster_count; ++c) {
    attach_cluster(base, firsts[static_cast<std::size_t>(c)], sizes[static_cast<std::size_t>(c)],
                   spec.attachment_edges, rng);
  }
  // Random spanning tree over clusters: cluster c links to an earlier one.
  for (int c = 1; c < spec.cluster_count; ++c) {
    const auto other = static_cast<int>(rng.below(static_cast<std::uint64_t>(c)));
    const std::size_t u = firsts[static_cast<std::size_t>(c)] +
                          rng.below(static_cast<std::uint64_t>(sizes[static_cast<std::size_t>(c)]));
    const std::size_t v = firsts[static_cast<std::size_t>(other)] +
                          rng.below(static_cast<std::uint64_t>(sizes[static_cast<std::size_t>(other)]));
    base.add_edge(u, v);
  }

  if (spec.timestep_count == 1) return base;

  Graph out(spec.directed, spec.timestep_count);
  for (const Node& n : base.nodes()) out.add_node(n);

  std::vector<PlainEdge> current;
  for (const Edge& e : base.edges()) current.push_back({e.source, e.target});
  const auto churn = static_cast<std::size_t>(
      std::ceil(kTimesliceChurn * static_cast<double>(current.size())));
  const std::size_t n = base.node_count();

  for (int t = 0; t < spec.timestep_count; ++t) {
    if (t > 0) {
      Graph prev(spec.directed, 1);
      for (std::size_t i = 0; i < n; ++i) prev.add_node("v" + std::to_string(i));
      for (const PlainEdge& e : current) prev.add_edge(e.source, e.target);

      const std::size_t removals = std::min(churn, current.size());
      for (std::size_t r = 0; r < removals; ++r) {
        const auto idx = static_cast<std::size_t>(rng.below(current.size()));
        current.erase(current.begin() + static_cast<std::ptrdiff_t>(idx));
      }
      // Candidates: pairs absent from the previous slice and not yet re-added.
      std::vector<PlainEdge> candidates;
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = spec.directed ? 0 : u + 1; v < n; ++v) {
          if (u == v || prev.has_edge(u, v)) continue;
          candidates.push_back({u, v});
        }
      }
      for (std::size_t a = 0; a < removals && !candidates.empty(); ++a) {
        const auto idx = static_cast<std::size_t>(rng.below(candidates.size()));
        current.push_back(candidates[idx]);
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(idx));
      }
    }
    for (const PlainEdge& e : current) {
      out.add_edge(Edge{e.source, e.target, {}, {}, t, {}});
    }
  }
  return out;
}

}  // namespace guidex
