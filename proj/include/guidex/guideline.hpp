#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "guidex/graph.hpp"
#include "guidex/taxonomy.hpp"

namespace guidex {

template <typename T>
struct Range {
  T min{};
  T max{};

  friend bool operator==(const Range&, const Range&) = default;
};

/// One publication backing a guideline, with the size and density of the graphs
/// its study used. Ranges the publication does not state are left empty.
struct Source {
  std::string citation;
  std::string scholar_url;
  std::optional<Range<int>> study_node_range;
  std::optional<Range<double>> study_density_range;

  friend bool operator==(const Source&, const Source&) = default;
};

struct GuidelineRecord {
  std::string id;
  std::string if_statement;
  std::string then_statement;
  std::set<IfType> if_types;
  GraphTypeSet graph_types;
  std::vector<std::string> decision_path;
  VisType vis_type = VisType::node_link;
  std::set<std::string> tasks;
  std::vector<Source> sources;
  /// Registered visual mapping; empty for user-added stubs.
  std::optional<std::string> mapping_id;

  /// "If <if>, then <then>."
  std::string statement() const;
  /// Last element of decision_path.
  const std::string& category() const { return decision_path.back(); }

  friend bool operator==(const GuidelineRecord&, const GuidelineRecord&) = default;
};

/// Throws ValidationError naming the first violated invariant.
void validate_record(const GuidelineRecord& record);

/// Case-folded, whitespace-collapsed form used to group statements.
std::string normalize_statement(std::string_view s);

/// The fourteen seeded guidelines.
std::vector<GuidelineRecord> seed_records();

}  // namespace guidex
