#include "guidex/suitability.hpp"

#include <algorithm>

namespace guidex {

std::string_view to_string(CriterionStatus s) {
  switch (s) {
    case CriterionStatus::match: return "match";
    case CriterionStatus::mismatch: return "mismatch";
    case CriterionStatus::no_match: return "no_match";
    case CriterionStatus::moot: return "moot";
  }
  return "?";
}

std::string_view to_string(Summary s) {
  switch (s) {
    case Summary::well_suited: return "well_suited";
    case Summary::medium: return "medium";
    case Summary::not_suited: return "not_suited";
  }
  return "?";
}

int rank(Summary s) {
  return static_cast<int>(s);
}

bool within_study_range(double value, double min, double max, double margin) {
  return value >= min * (1.0 - margin) && value <= max * (1.0 + margin);
}

Summary summarize(CriterionStatus gt, CriterionStatus n, CriterionStatus d) {
  if (gt != CriterionStatus::match) return Summary::not_suited;
  if (n == CriterionStatus::match && d == CriterionStatus::match) return Summary::well_suited;
  return Summary::medium;
}

SuitabilityAssessment assess(const GuidelineRecord& guideline, const GraphMetrics& metrics) {
  SuitabilityAssessment a;
  const GraphTypeSet closure = compatibility_closure(metrics.detected_types);
  const bool type_match = std::any_of(guideline.graph_types.begin(), guideline.graph_types.end(),
                                      [&](GraphTypeTag t) { return closure.contains(t); });
  if (!type_match) {
    a.gt = CriterionStatus::mismatch;
    a.n = a.d = CriterionStatus::moot;
  } else {
    a.gt = CriterionStatus::match;
    // Any source whose study range covers the graph evidences the criterion.
    const auto nodes = static_cast<double>(metrics.node_count);
    const bool n_ok = std::any_of(guideline.sources.begin(), guideline.sources.end(), [&](const Source& s) {
      return s.study_node_range &&
             within_study_range(nodes, s.study_node_range->min, s.study_node_range->max);
    });
    const bool d_ok = std::any_of(guideline.sources.begin(), guideline.sources.end(), [&](const Source& s) {
      return s.study_density_range &&
             within_study_range(metrics.density, s.study_density_range->min, s.study_density_range->max);
    });
    a.n = n_ok ? CriterionStatus::match : CriterionStatus::no_match;
    a.d = d_ok ? CriterionStatus::match : CriterionStatus::no_match;
  }
  a.summary = summarize(a.gt, a.n, a.d);
  a.applicable = a.gt == CriterionStatus::match;
  return a;
}

std::vector<std::pair<std::string, SuitabilityAssessment>> assess_all(std::span<const GuidelineRecord> records,
                                                                       const GraphMetrics& metrics) {
  std::vector<std::pair<std::string, SuitabilityAssessment>> out;
  out.reserve(records.size());
  for (const GuidelineRecord& r : records) out.emplace_back(r.id, assess(r, metrics));
  return out;
}

}  // namespace guidex
