#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "guidex/graph.hpp"
#include "guidex/guideline.hpp"

namespace guidex {

/// GT is match (green) or mismatch (orange). #N and #D are match (green),
/// no_match (yellow), or moot when GT already failed.
enum class CriterionStatus { match, mismatch, no_match, moot };
enum class Summary { well_suited, medium, not_suited };

std::string_view to_string(CriterionStatus s);
std::string_view to_string(Summary s);

struct SuitabilityAssessment {
  CriterionStatus gt = CriterionStatus::mismatch;
  CriterionStatus n = CriterionStatus::moot;
  CriterionStatus d = CriterionStatus::moot;
  Summary summary = Summary::not_suited;
  /// False means the overview cell is grayed out and rendering refuses it.
  bool applicable = false;

  friend bool operator==(const SuitabilityAssessment&, const SuitabilityAssessment&) = default;
};

/// Relative tolerance applied to both ends of a study range.
inline constexpr double kStudyRangeMargin = 0.20;

/// The #N/#D matching rule: value lies in [min*(1-margin), max*(1+margin)].
bool within_study_range(double value, double min, double max, double margin = kStudyRangeMargin);

Summary summarize(CriterionStatus gt, CriterionStatus n, CriterionStatus d);

SuitabilityAssessment assess(const GuidelineRecord& guideline, const GraphMetrics& metrics);

std::vector<std::pair<std::string, SuitabilityAssessment>> assess_all(std::span<const GuidelineRecord> records,
                                                                       const GraphMetrics& metrics);

/// Ordering key: well_suited < medium < not_suited.
int rank(Summary s);

}  // namespace guidex
