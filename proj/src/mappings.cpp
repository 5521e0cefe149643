#include "guidex/mappings.hpp"

namespace guidex {

std::string_view to_string(LayoutKind k) {
  switch (k) {
    case LayoutKind::force_directed: return "force_directed";
    case LayoutKind::orthogonal: return "orthogonal";
    case LayoutKind::clustered: return "clustered";
    case LayoutKind::matrix: return "matrix";
  }
  return "?";
}

std::string_view to_string(EdgeStyle k) {
  switch (k) {
    case EdgeStyle::line: return "line";
    case EdgeStyle::arrow: return "arrow";
    case EdgeStyle::tapered: return "tapered";
    case EdgeStyle::partially_drawn: return "partially_drawn";
    case EdgeStyle::curved: return "curved";
    case EdgeStyle::animated_pattern: return "animated_pattern";
  }
  return "?";
}

std::string_view to_string(OverlayKind k) {
  switch (k) {
    case OverlayKind::cluster_hulls: return "cluster_hulls";
    case OverlayKind::bubble_sets: return "bubble_sets";
    case OverlayKind::edge_bars: return "edge_bars";
  }
  return "?";
}

std::string_view to_string(AnnotationKind k) {
  switch (k) {
    case AnnotationKind::crossing_refinement: return "crossing_refinement";
    case AnnotationKind::fixed_layout: return "fixed_layout";
    case AnnotationKind::small_multiples: return "small_multiples";
    case AnnotationKind::hierarchical_colors: return "hierarchical_colors";
  }
  return "?";
}

const std::vector<MappingSpec>& mapping_catalog() {
  static const std::vector<MappingSpec> catalog = [] {
    std::vector<MappingSpec> c;
    auto add = [&c](std::string id) -> MappingSpec& {
      c.push_back(MappingSpec{std::move(id), VisType::node_link, {}, {}, {}, {}, false});
      return c.back();
    };
    add("force_directed").layout = LayoutKind::force_directed;
    add("overloaded_orthogonal").layout = LayoutKind::orthogonal;
    {
      auto& m = add("highly_connected_hull");
      m.layout = LayoutKind::clustered;
      m.overlays = {OverlayKind::cluster_hulls};
    }
    add("tapered_edges").edge_style = EdgeStyle::tapered;
    add("animated_pattern_edges").edge_style = EdgeStyle::animated_pattern;
    add("partially_drawn_edges").edge_style = EdgeStyle::partially_drawn;
    add("curved_edges").edge_style = EdgeStyle::curved;
    add("bubble_sets").overlays = {OverlayKind::bubble_sets};
    add("edge_bar_charts").overlays = {OverlayKind::edge_bars};
    add("crossing_angle").annotations = {AnnotationKind::crossing_refinement};
    add("mental_map").annotations = {AnnotationKind::fixed_layout};
    add("small_multiples").annotations = {AnnotationKind::small_multiples};
    add("hierarchical_node_colors").annotations = {AnnotationKind::hierarchical_colors};
    {
      auto& m = add("adjacency_matrix");
      m.vis_type = VisType::matrix;
      m.layout = LayoutKind::matrix;
    }
    return c;
  }();
  return catalog;
}

const MappingSpec* find_mapping(std::string_view id) {
  for (const MappingSpec& m : mapping_catalog()) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

MappingSpec stub_mapping(std::string_view guideline_id) {
  MappingSpec m;
  m.id = "stub:" + std::string(guideline_id);
  m.unimplemented = true;
  return m;
}

}  // namespace guidex
