#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "guidex/guideline.hpp"
#include "guidex/mappings.hpp"
#include "guidex/suitability.hpp"

namespace guidex {

enum class Perspective { decision, graph_type, if_type, task };
enum class Grouping { none, same_if, same_then };

std::string_view to_string(Perspective p);
std::string_view to_string(Grouping g);
Perspective perspective_from_string(std::string_view s);
Grouping grouping_from_string(std::string_view s);

struct ViewEntry {
  std::string id;
  std::optional<SuitabilityAssessment> assessment;
};

/// Guidelines sharing one normalized if- or then-statement.
struct ViewGroup {
  std::string key;
  std::vector<ViewEntry> entries;
};

struct CategoryView {
  std::string name;
  std::vector<std::string> path;
  std::vector<ViewEntry> entries;
  /// Filled only when grouping != none; a partition of `entries`.
  std::vector<ViewGroup> groups;
  std::vector<CategoryView> children;
};

struct TaxonomyView {
  Perspective perspective = Perspective::decision;
  Grouping grouping = Grouping::none;
  CategoryView root;
};

/// Builds the perspective tree over `records`, keeping only categories with
/// at least one guideline beneath them. With metrics, entries carry an
/// assessment and are ordered well_suited, medium, not_suited, then id.
TaxonomyView list_guidelines(std::span<const GuidelineRecord> records, Perspective perspective,
                             Grouping grouping, const GraphMetrics* metrics);

struct Distribution {
  std::size_t count = 0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

struct AnalyticsReport {
  std::size_t guideline_count = 0;
  /// Keyed by category path joined with '/', counting every prefix.
  std::map<std::string, std::size_t> per_category;
  std::map<std::string, std::size_t> task_histogram;
  std::map<std::string, std::size_t> per_graph_type;
  /// Midpoints of known study node ranges.
  std::optional<Distribution> study_node_midpoints;
  std::optional<int> max_study_nodes;
};

AnalyticsReport corpus_analytics(std::span<const GuidelineRecord> records);

/// Guideline store. Reads run concurrently; writes are serialized and, when
/// the registry is file-backed, rewrite the file atomically.
class Registry {
 public:
  explicit Registry(std::vector<GuidelineRecord> records, std::optional<std::filesystem::path> file = {});

  static Registry seeded() { return Registry(seed_records()); }
  /// Loads a registry file and keeps it as the write-back target.
  static std::unique_ptr<Registry> open(const std::filesystem::path& file);
  /// Records of a registry file.
  static std::vector<GuidelineRecord> load(const std::filesystem::path& file);

  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  std::vector<GuidelineRecord> records() const;
  GuidelineRecord details(std::string_view id) const;
  bool contains(std::string_view id) const;

  /// Exact id, or the unique id starting with `query` after mapping '_' to '-'.
  std::string resolve_id(std::string_view query) const;

  /// Throws Conflict on duplicate id, ValidationError on invalid record.
  std::string add(GuidelineRecord record);
  /// Full-record replacement of an existing guideline.
  void replace(GuidelineRecord record);

  MappingSpec mapping_for(std::string_view id) const;

  TaxonomyView list(Perspective perspective, Grouping grouping, const GraphMetrics* metrics) const;
  AnalyticsReport analytics() const;

  void save(const std::filesystem::path& file) const;

 private:
  void persist_locked() const;
  std::vector<GuidelineRecord>::const_iterator find_locked(std::string_view id) const;

  mutable std::shared_mutex mutex_;
  std::vector<GuidelineRecord> records_;
  std::optional<std::filesystem::path> file_;
};

}  // namespace guidex
