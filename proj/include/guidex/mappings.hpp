#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "guidex/taxonomy.hpp"

namespace guidex {

enum class LayoutKind { force_directed, orthogonal, clustered, matrix };
enum class EdgeStyle { line, arrow, tapered, partially_drawn, curved, animated_pattern };
enum class OverlayKind { cluster_hulls, bubble_sets, edge_bars };
enum class AnnotationKind { crossing_refinement, fixed_layout, small_multiples, hierarchical_colors };

std::string_view to_string(LayoutKind k);
std::string_view to_string(EdgeStyle k);
std::string_view to_string(OverlayKind k);
std::string_view to_string(AnnotationKind k);

/// What a visual mapping contributes to a render plan. Layout and edge
/// style are exclusive slots; overlays and annotations accumulate.
struct MappingSpec {
  std::string id;
  VisType vis_type = VisType::node_link;
  std::optional<LayoutKind> layout;
  std::optional<EdgeStyle> edge_style;
  std::vector<OverlayKind> overlays;
  std::vector<AnnotationKind> annotations;
  bool unimplemented = false;
};

/// Every implemented mapping, in a fixed order.
const std::vector<MappingSpec>& mapping_catalog();
const MappingSpec* find_mapping(std::string_view id);

/// Mapping for guidelines added without an implementation: fills no slot and
/// renders the base graph, flagged as unimplemented.
MappingSpec stub_mapping(std::string_view guideline_id);

}  // namespace guidex
