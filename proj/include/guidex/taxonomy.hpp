#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace guidex {

/// A category in one of the taxonomy trees.
struct TaxonomyNode {
  std::string name;
  std::vector<TaxonomyNode> children;

  const TaxonomyNode* child(std::string_view n) const;
};

/// Visualization decisions: layout, nodes, edges{directed, undirected},
/// additional_information{group, multivariate}, readability, dynamic_graphs.
const TaxonomyNode& decision_tree();

/// Graph-analysis tasks with the own_opinion extension.
const TaxonomyNode& task_tree();

/// True if `path` walks from the root's children downwards.
bool is_valid_path(const TaxonomyNode& root, std::span<const std::string> path);

/// Dotted task tags such as "topology.adjacency" or "overview".
bool is_valid_task(std::string_view tag);
std::vector<std::string> split_task(std::string_view tag);

enum class IfType { graph_type, answer_characteristic, graph_property, wanted_detail, task, interaction };

inline constexpr IfType kAllIfTypes[] = {IfType::graph_type,     IfType::answer_characteristic,
                                         IfType::graph_property, IfType::wanted_detail,
                                         IfType::task,           IfType::interaction};

std::string_view to_string(IfType t);
IfType if_type_from_string(std::string_view s);

enum class VisType { node_link, matrix };
std::string_view to_string(VisType t);
VisType vis_type_from_string(std::string_view s);

}  // namespace guidex
