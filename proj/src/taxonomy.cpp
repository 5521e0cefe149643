#include "guidex/taxonomy.hpp"

#include "guidex/error.hpp"

namespace guidex {

const TaxonomyNode* TaxonomyNode::child(std::string_view n) const {
  for (const TaxonomyNode& c : children) {
    if (c.name == n) return &c;
  }
  return nullptr;
}

const TaxonomyNode& decision_tree() {
  static const TaxonomyNode root{
      "decision",
      {
          {"layout", {}},
          {"nodes", {}},
          {"edges", {{"directed", {}}, {"undirected", {}}}},
          {"additional_information", {{"group", {}}, {"multivariate", {}}}},
          {"readability", {}},
          {"dynamic_graphs", {}},
      }};
  return root;
}

const TaxonomyNode& task_tree() {
  static const TaxonomyNode root{
      "task",
      {
          {"low_level",
           {{"retrieve_value", {}},
            {"filter", {}},
            {"compute_derived_value", {}},
            {"find_extrema", {}},
            {"sort", {}},
            {"determine_range", {}},
            {"characterize_distribution", {}},
            {"find_anomalies", {}},
            {"find_clusters", {}},
            {"find_correlations", {}}}},
          {"topology", {{"adjacency", {}}, {"accessibility", {}}, {"common_connection", {}}, {"connectivity", {}}}},
          {"attribute", {{"node", {}}, {"edge", {}}}},
          {"browsing", {{"follow_path", {}}, {"revisit", {}}}},
          {"overview", {}},
          {"high_level", {}},
          {"own_opinion", {}},
      }};
  return root;
}

bool is_valid_path(const TaxonomyNode& root, std::span<const std::string> path) {
  if (path.empty()) return false;
  const TaxonomyNode* at = &root;
  for (const std::string& step : path) {
    at = at->child(step);
    if (at == nullptr) return false;
  }
  return true;
}

std::vector<std::string> split_task(std::string_view tag) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto dot = tag.find('.', start);
    parts.emplace_back(tag.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

bool is_valid_task(std::string_view tag) {
  auto parts = split_task(tag);
  return is_valid_path(task_tree(), parts);
}

std::string_view to_string(IfType t) {
  switch (t) {
    case IfType::graph_type: return "graph_type";
    case IfType::answer_characteristic: return "answer_characteristic";
    case IfType::graph_property: return "graph_property";
    case IfType::wanted_detail: return "wanted_detail";
    case IfType::task: return "task";
    case IfType::interaction: return "interaction";
  }
  return "?";
}

IfType if_type_from_string(std::string_view s) {
  for (IfType t : kAllIfTypes) {
    if (to_string(t) == s) return t;
  }
  throw ValidationError("unknown if-type '" + std::string(s) + "'");
}

std::string_view to_string(VisType t) {
  return t == VisType::matrix ? "matrix" : "node_link";
}

VisType vis_type_from_string(std::string_view s) {
  if (s == "node_link") return VisType::node_link;
  if (s == "matrix") return VisType::matrix;
  throw ValidationError("unknown vis_type '" + std::string(s) + "'");
}

}  // namespace guidex
