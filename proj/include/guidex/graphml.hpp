#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "guidex/graph.hpp"

namespace guidex {

/// Recognized data keys, matched by attr.name (or by key id when attr.name
/// is absent):
///   node:  x, y (double), cluster (int), label (string)
///   edge:  weight (double), timestep (int), attributes (space-separated doubles)
///   graph: timestep_count (int), graph_type (space-separated declared tags)
/// Anything else is ignored and reported as a warning.
struct GraphmlReadResult {
  Graph graph;
  std::vector<std::string> warnings;
};

/// Errors: ParseError (malformed XML, with line/column), SchemaError
/// (missing edgedefault, bad values, structure), ReferenceError (dangling
/// endpoint), UnsupportedFeature (self-loop, nested graph, port, hyperedge).
GraphmlReadResult parse_graphml(std::string_view document);

/// Deterministic output: nodes sorted by id, edges by (source, target,
/// timestep); doubles printed in shortest round-trip form.
std::string write_graphml(const Graph& graph);

std::string read_file(const std::string& path);

}  // namespace guidex
