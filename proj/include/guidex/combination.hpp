#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "guidex/graph.hpp"
#include "guidex/guideline.hpp"
#include "guidex/mappings.hpp"

namespace guidex {

class Registry;

/// Combination rules:
///   R1 entries share a graph type that is compatible with the graph
///   R2 entries sit in pairwise distinct foundational categories
///   R3 entries share one vis_type (node-link and matrix never mix)
///   R4 every entry is individually applicable to the graph
enum class Rule { R1, R2, R3, R4 };
std::string_view to_string(Rule r);

struct Violation {
  Rule rule = Rule::R1;
  /// Offending ids, sorted.
  std::vector<std::string> ids;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// A validated composition of one main guideline with zero or more combined
/// guidelines, resolved into visual slots.
struct RenderPlan {
  std::string main;
  std::vector<std::string> combined;
  VisType vis_type = VisType::node_link;
  LayoutKind layout = LayoutKind::force_directed;
  bool layout_defaulted = true;
  /// Empty means the default: arrows for directed graphs, lines otherwise.
  std::optional<EdgeStyle> edge_style;
  std::set<OverlayKind> overlays;
  std::set<AnnotationKind> annotations;
  /// Graph types every entry shares with the graph.
  GraphTypeSet shared_types;
  /// "If ..., then ..." for each applied guideline, main first.
  std::vector<std::string> statements;
  /// Applied guidelines that only have a stub mapping.
  std::vector<std::string> unimplemented;

  /// Number of slots filled by guidelines rather than defaults.
  std::size_t filled_slots() const;
};

/// Plan with no guideline applied: default layout and edge style.
RenderPlan base_plan();

class CombinationRejected : public Error {
 public:
  explicit CombinationRejected(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// `selection[0]` is the main guideline. Returns every violation; empty
/// means the combination is valid. The result does not depend on the order
/// of the combined entries.
std::vector<Violation> validate_combination(std::span<const GuidelineRecord> selection,
                                            const GraphMetrics& metrics);

/// Looks ids up in the registry; unknown ids throw NotFound.
std::vector<Violation> validate_combination(const Registry& registry, std::string_view main,
                                            std::span<const std::string> combined, const GraphMetrics& metrics);

/// Throws CombinationRejected when validation fails and SlotConflict when two
/// mappings claim the same exclusive slot or form an unimplemented pairing.
RenderPlan compose(std::span<const GuidelineRecord> selection, std::span<const MappingSpec> mappings,
                   const GraphMetrics& metrics);

RenderPlan compose(const Registry& registry, std::string_view main, std::span<const std::string> combined,
                   const GraphMetrics& metrics);

}  // namespace guidex
