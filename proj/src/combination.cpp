#include "guidex/combination.hpp"

#include <algorithm>
#include <utility>

#include "guidex/registry.hpp"
#include "guidex/suitability.hpp"

namespace guidex {

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
  }
  return "?";
}

std::size_t RenderPlan::filled_slots() const {
  return (layout_defaulted ? 0u : 1u) + (edge_style ? 1u : 0u) + overlays.size() + annotations.size();
}

RenderPlan base_plan() {
  return RenderPlan{};
}

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
  std::string out = "combination rejected:";
  for (const Violation& v : vs) out += " [" + std::string(to_string(v.rule)) + "] " + v.message + ";";
  return out;
}

Violation make_violation(Rule rule, std::vector<std::string> ids, std::string message) {
  std::sort(ids.begin(), ids.end());
  return Violation{rule, std::move(ids), std::move(message)};
}

std::string path_string(const std::vector<std::string>& path) {
  std::string out;
  for (const auto& p : path) out += (out.empty() ? "" : "/") + p;
  return out;
}

GraphTypeSet intersect(const GraphTypeSet& a, const GraphTypeSet& b) {
  GraphTypeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

// Pairings whose slots differ but that have no rendering: orthogonal routes
// are axis-aligned by construction and fixed to the grid.
bool unimplemented_pairing(const MappingSpec& a, const MappingSpec& b) {
  auto one_way = [](const MappingSpec& x, const MappingSpec& y) {
    if (x.layout != LayoutKind::orthogonal) return false;
    if (y.edge_style == EdgeStyle::curved) return true;
    return std::find(y.annotations.begin(), y.annotations.end(), AnnotationKind::crossing_refinement) !=
           y.annotations.end();
  };
  return one_way(a, b) || one_way(b, a);
}

}  // namespace

CombinationRejected::CombinationRejected(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

std::vector<Violation> validate_combination(std::span<const GuidelineRecord> selection,
                                            const GraphMetrics& metrics) {
  std::vector<Violation> out;
  const GraphTypeSet closure = compatibility_closure(metrics.detected_types);

  for (const GuidelineRecord& r : selection) {
    if (!assess(r, metrics).applicable) {
      out.push_back(make_violation(Rule::R4, {r.id}, r.id + " is not applicable to this graph type"));
    }
  }

  bool pair_r1 = false;
  for (std::size_t i = 0; i < selection.size(); ++i) {
    for (std::size_t j = i + 1; j < selection.size(); ++j) {
      // Name each pair in id order so messages do not depend on selection order.
      const bool swap = selection[j].id < selection[i].id;
      const GuidelineRecord& a = swap ? selection[j] : selection[i];
      const GuidelineRecord& b = swap ? selection[i] : selection[j];
      if (intersect(intersect(a.graph_types, b.graph_types), closure).empty()) {
        pair_r1 = true;
        out.push_back(make_violation(Rule::R1, {a.id, b.id},
                                     a.id + " and " + b.id + " share no graph type that fits the graph"));
      }
      if (a.decision_path == b.decision_path) {
        out.push_back(make_violation(Rule::R2, {a.id, b.id},
                                     a.id + " and " + b.id + " are both in category " +
                                         path_string(a.decision_path)));
      }
      if (a.vis_type != b.vis_type) {
        out.push_back(make_violation(Rule::R3, {a.id, b.id},
                                     a.id + " (" + std::string(to_string(a.vis_type)) + ") and " + b.id + " (" +
                                         std::string(to_string(b.vis_type)) + ") are not combinable"));
      }
    }
  }
  if (!pair_r1 && selection.size() > 2) {
    GraphTypeSet shared = closure;
    for (const GuidelineRecord& r : selection) shared = intersect(shared, r.graph_types);
    if (shared.empty()) {
      std::vector<std::string> ids;
      for (const GuidelineRecord& r : selection) ids.push_back(r.id);
      out.push_back(make_violation(Rule::R1, std::move(ids), "no graph type is shared by all guidelines"));
    }
  }

  std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
    return std::tie(x.rule, x.ids) < std::tie(y.rule, y.ids);
  });
  return out;
}

namespace {

std::vector<GuidelineRecord> lookup(const Registry& registry, std::string_view main,
                                    std::span<const std::string> combined) {
  std::vector<GuidelineRecord> selection;
  selection.push_back(registry.details(main));
  for (const std::string& id : combined) selection.push_back(registry.details(id));
  return selection;
}

}  // namespace

std::vector<Violation> validate_combination(const Registry& registry, std::string_view main,
                                            std::span<const std::string> combined, const GraphMetrics& metrics) {
  return validate_combination(lookup(registry, main, combined), metrics);
}

RenderPlan compose(std::span<const GuidelineRecord> selection, std::span<const MappingSpec> mappings,
                   const GraphMetrics& metrics) {
  if (selection.empty()) throw ValidationError("a main guideline must be selected");
  if (mappings.size() != selection.size()) throw ValidationError("one mapping per guideline is required");
  auto violations = validate_combination(selection, metrics);
  if (!violations.empty()) throw CombinationRejected(std::move(violations));

  RenderPlan plan;
  plan.main = selection[0].id;
  for (std::size_t i = 1; i < selection.size(); ++i) plan.combined.push_back(selection[i].id);
  plan.vis_type = selection[0].vis_type;
  plan.shared_types = compatibility_closure(metrics.detected_types);

  std::optional<std::string> layout_owner;
  std::optional<std::string> edge_owner;
  for (std::size_t i = 0; i < selection.size(); ++i) {
    const GuidelineRecord& r = selection[i];
    const MappingSpec& m = mappings[i];
    plan.shared_types = intersect(plan.shared_types, r.graph_types);
    plan.statements.push_back(r.statement());
    if (m.unimplemented) plan.unimplemented.push_back(r.id);
    if (m.layout) {
      if (layout_owner) throw SlotConflict("layout slot claimed by both " + *layout_owner + " and " + r.id);
      layout_owner = r.id;
      plan.layout = *m.layout;
      plan.layout_defaulted = false;
    }
    if (m.edge_style) {
      if (edge_owner) throw SlotConflict("edge-style slot claimed by both " + *edge_owner + " and " + r.id);
      edge_owner = r.id;
      plan.edge_style = m.edge_style;
    }
    plan.overlays.insert(m.overlays.begin(), m.overlays.end());
    plan.annotations.insert(m.annotations.begin(), m.annotations.end());
    for (std::size_t j = 0; j < i; ++j) {
      if (unimplemented_pairing(mappings[j], m)) {
        throw SlotConflict("no rendering is implemented for " + selection[j].id + " combined with " + r.id);
      }
    }
  }
  return plan;
}

RenderPlan compose(const Registry& registry, std::string_view main, std::span<const std::string> combined,
                   const GraphMetrics& metrics) {
  auto selection = lookup(registry, main, combined);
  std::vector<MappingSpec> mappings;
  for (const GuidelineRecord& r : selection) mappings.push_back(registry.mapping_for(r.id));
  return compose(selection, mappings, metrics);
}

}  // namespace guidex
