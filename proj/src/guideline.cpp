#include "guidex/guideline.hpp"

#include <cctype>
#include <cmath>

#include "guidex/mappings.hpp"

namespace guidex {

std::string GuidelineRecord::statement() const {
  return "If " + if_statement + ", then " + then_statement + ".";
}

void validate_record(const GuidelineRecord& r) {
  if (r.id.empty()) throw ValidationError("guideline id must not be empty");
  for (char c : r.id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) {
      throw ValidationError("guideline id '" + r.id + "' may only contain [A-Za-z0-9._-]");
    }
  }
  if (r.if_statement.empty()) throw ValidationError(r.id + ": if_statement must not be empty");
  if (r.then_statement.empty()) throw ValidationError(r.id + ": then_statement must not be empty");
  if (r.graph_types.empty()) throw ValidationError(r.id + ": graph_types must not be empty");
  if (!is_valid_path(decision_tree(), r.decision_path)) {
    std::string path;
    for (const auto& p : r.decision_path) path += (path.empty() ? "" : "/") + p;
    throw ValidationError(r.id + ": invalid decision path '" + path + "'");
  }
  for (const std::string& task : r.tasks) {
    if (!is_valid_task(task)) throw ValidationError(r.id + ": unknown task '" + task + "'");
  }
  for (const Source& s : r.sources) {
    if (s.study_node_range && (s.study_node_range->min > s.study_node_range->max || s.study_node_range->min < 0)) {
      throw ValidationError(r.id + ": study_node_range needs 0 <= min <= max");
    }
    if (s.study_density_range) {
      const auto& d = *s.study_density_range;
      if (!(std::isfinite(d.min) && std::isfinite(d.max)) || d.min > d.max || d.min < 0.0 || d.max > 1.0) {
        throw ValidationError(r.id + ": study_density_range needs 0 <= min <= max <= 1");
      }
    }
  }
  if (r.mapping_id) {
    const MappingSpec* m = find_mapping(*r.mapping_id);
    if (m == nullptr) throw ValidationError(r.id + ": unknown mapping '" + *r.mapping_id + "'");
    if (m->vis_type != r.vis_type) throw ValidationError(r.id + ": mapping vis_type differs from record");
  }
}

std::string normalize_statement(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

namespace {

std::string scholar(std::string_view query) {
  std::string url = "https://scholar.google.com/scholar?q=";
  for (char c : query) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      url += c;
    } else if (c == ' ') {
      url += '+';
    }
  }
  return url;
}

Source cite(std::string citation, std::string title) {
  return Source{std::move(citation), scholar(title), {}, {}};
}

}  // namespace

std::vector<GuidelineRecord> seed_records() {
  using G = GraphTypeTag;
  using I = IfType;
  std::vector<GuidelineRecord> out;

  out.push_back({"force-directed-layout",
                 "you visualize a graph as a node-link diagram",
                 "use a force-directed layout",
                 {I::graph_type},
                 {G::undirected, G::directed},
                 {"layout"},
                 VisType::node_link,
                 {"topology.adjacency", "topology.connectivity", "browsing.follow_path"},
                 {cite("M. Pohl, M. Schmitt, S. Diehl. Comparing the readability of graph layouts using "
                       "eyetracking and task-oriented analysis. Computational Aesthetics 2009.",
                       "Comparing the readability of graph layouts using eyetracking and task-oriented analysis")},
                 "force_directed"});

  out.push_back({"overloaded-orthogonal-layout",
                 "you visualize a directed graph and want to reduce edge clutter",
                 "use an overloaded orthogonal layout",
                 {I::graph_type},
                 {G::directed},
                 {"layout"},
                 VisType::node_link,
                 {"topology.adjacency", "topology.connectivity"},
                 {cite("W. Didimo et al. Overloaded orthogonal drawings. Graph Drawing 2014.",
                       "Overloaded orthogonal drawings")},
                 "overloaded_orthogonal"});

  out.push_back({"highly-connected-hull",
                 "the graph contains groups of highly connected nodes",
                 "place highly connected nodes together and enclose them with a convex hull",
                 {I::graph_property},
                 {G::undirected, G::directed},
                 {"layout"},
                 VisType::node_link,
                 {"low_level.find_clusters", "topology.common_connection"},
                 {cite("IEEE Xplore document 4658147.", "4658147 highly connected nodes convex hull graph layout")},
                 "highly_connected_hull"});

  {
    Source holten = cite("D. Holten, J. J. van Wijk. A user study on visualizing directed edges in graphs. "
                         "CHI 2009. doi:10.1145/1518701.1519054",
                         "A user study on visualizing directed edges in graphs");
    holten.study_node_range = Range<int>{50, 50};
    // Corpus calibration, see README: reproduces the sparse/dense walkthrough.
    holten.study_density_range = Range<double>{0.02, 0.08};
    out.push_back({"tapered-edges",
                   "you visualize a directed graph as a node-link diagram",
                   "use tapered edges to show the direction of the edges",
                   {I::graph_type},
                   {G::directed},
                   {"edges", "directed"},
                   VisType::node_link,
                   {"topology.adjacency", "topology.accessibility"},
                   {holten},
                   "tapered_edges"});
  }

  out.push_back({"animated-pattern-edges",
                 "you visualize a directed graph and users should answer quickly",
                 "use an animated dash pattern moving from source to target",
                 {I::answer_characteristic},
                 {G::directed},
                 {"edges", "directed"},
                 VisType::node_link,
                 {"topology.adjacency", "own_opinion"},
                 {cite("D. Holten, P. Isenberg, J. J. van Wijk, J.-D. Fekete. An extended evaluation of the "
                       "readability of tapered, animated, and textured directed-edge representations in "
                       "node-link graphs. PacificVis 2011.",
                       "An extended evaluation of the readability of tapered animated and textured "
                       "directed-edge representations in node-link graphs")},
                 "animated_pattern_edges"});

  {
    Source burch = cite("M. Burch, C. Vehlow, N. Konevtsova, D. Weiskopf. Evaluating partially drawn links "
                        "for directed graph edges. Graph Drawing 2011. doi:10.1007/978-3-642-25878-7_22",
                        "Evaluating partially drawn links for directed graph edges");
    burch.study_node_range = Range<int>{50, 50};
    burch.study_density_range = Range<double>{0.02, 0.15};
    out.push_back({"partially-drawn-edges",
                   "you visualize a dense directed graph and answers should be correct",
                   "draw only the source-side part of each edge to reduce overplotting",
                   {I::answer_characteristic},
                   {G::directed},
                   {"edges", "directed"},
                   VisType::node_link,
                   {"topology.adjacency"},
                   {burch},
                   "partially_drawn_edges"});
  }

  out.push_back({"curved-edges",
                 "curved edges are wanted for an undirected graph",
                 "use slightly curved edges, which do not harm readability",
                 {I::wanted_detail},
                 {G::undirected},
                 {"edges", "undirected"},
                 VisType::node_link,
                 {"topology.connectivity", "own_opinion"},
                 {cite("K. Xu, C. Rooney, P. Passmore, D.-H. Ham, P. H. Nguyen. A user study on curved edges "
                       "in graph visualization. Diagrams 2012. doi:10.1007/978-3-642-31223-6_34",
                       "A user study on curved edges in graph visualization")},
                 "curved_edges"});

  out.push_back({"bubble-sets-groups",
                 "the task is to identify group membership of nodes",
                 "show groups with bubble-set style outlines around their members",
                 {I::task},
                 {G::undirected},
                 {"additional_information", "group"},
                 VisType::node_link,
                 {"low_level.find_clusters", "attribute.node"},
                 {cite("R. Jianu, A. Rusu, Y. Hu, D. Taggart. How to display group information on node-link "
                       "diagrams: an evaluation. IEEE TVCG 2014.",
                       "How to display group information on node-link diagrams an evaluation")},
                 "bubble_sets"});

  out.push_back({"edge-bar-charts",
                 "edges carry multivariate attributes that must be compared",
                 "draw small bar charts on the edges, one bar per attribute",
                 {I::task},
                 {G::undirected, G::directed},
                 {"additional_information", "multivariate"},
                 VisType::node_link,
                 {"attribute.edge", "low_level.retrieve_value", "low_level.find_extrema"},
                 {cite("S. Schoeffel, J. Schwank, A. Ebert. A user study on multivariate edge visualizations "
                       "for graph-based visual analysis tasks. 2016.",
                       "A user study on multivariate edge visualizations for graph-based visual analysis tasks")},
                 "edge_bar_charts"});

  out.push_back({"crossing-angle",
                 "paths must be followed quickly and correctly",
                 "avoid edge crossings and maximize the angle of the remaining crossings",
                 {I::answer_characteristic},
                 {G::undirected},
                 {"readability"},
                 VisType::node_link,
                 {"browsing.follow_path", "topology.connectivity"},
                 {cite("C. Ware, H. Purchase, L. Colpoys, M. McGill. Cognitive measurements of graph "
                       "aesthetics. Information Visualization 2002.",
                       "Cognitive measurements of graph aesthetics")},
                 "crossing_angle"});

  out.push_back({"mental-map-fixed-layout",
                 "users have to relate the time steps of a dynamic graph to each other",
                 "keep node positions fixed across time steps to preserve the mental map",
                 {I::task},
                 {G::undirected, G::directed},
                 {"dynamic_graphs"},
                 VisType::node_link,
                 {"high_level", "browsing.revisit"},
                 {cite("K. Misue, P. Eades, W. Lai, K. Sugiyama. Layout adjustment and the mental map. "
                       "Journal of Visual Languages and Computing 1995.",
                       "Layout adjustment and the mental map")},
                 "mental_map"});

  out.push_back({"small-multiples",
                 "answers about a dynamic graph should be fast",
                 "show the time steps as small multiples instead of an animation",
                 {I::answer_characteristic},
                 {G::undirected, G::directed},
                 {"dynamic_graphs"},
                 VisType::node_link,
                 {"high_level", "overview"},
                 {cite("D. Archambault, H. C. Purchase, B. Pinaud. Animation, small multiples, and the effect "
                       "of mental map preservation in dynamic graphs. IEEE TVCG 2011.",
                       "Animation small multiples and the effect of mental map preservation in dynamic graphs")},
                 "small_multiples"});

  out.push_back({"tree-colors-nodes",
                 "you visualize a tree",
                 "color the nodes with a hierarchy-derived hue scheme",
                 {I::graph_type},
                 {G::tree},
                 {"nodes"},
                 VisType::node_link,
                 {"attribute.node", "overview"},
                 {cite("M. Tennekes, E. de Jonge. Tree colors: color schemes for tree-structured data. "
                       "IEEE TVCG 2014.",
                       "Tree colors color schemes for tree-structured data")},
                 "hierarchical_node_colors"});

  out.push_back({"adjacency-matrix",
                 "the graph is large or dense",
                 "visualize it as an adjacency matrix",
                 {I::graph_property},
                 {G::undirected, G::directed},
                 {"layout"},
                 VisType::matrix,
                 {"topology.adjacency", "topology.common_connection", "low_level.find_extrema"},
                 {cite("M. Ghoniem, J.-D. Fekete, P. Castagliola. A comparison of the readability of graphs "
                       "using node-link and matrix-based representations. InfoVis 2004.",
                       "A comparison of the readability of graphs using node-link and matrix-based "
                       "representations")},
                 "adjacency_matrix"});

  return out;
}

}  // namespace guidex
