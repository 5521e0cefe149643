#pragma once

#include <json.hpp>

#include "guidex/combination.hpp"
#include "guidex/generate.hpp"
#include "guidex/graph.hpp"
#include "guidex/guideline.hpp"
#include "guidex/registry.hpp"
#include "guidex/suitability.hpp"

namespace guidex {

using Json = nlohmann::ordered_json;

Json to_json(const GuidelineRecord& r);
/// Validates field types and record invariants; throws ValidationError.
GuidelineRecord record_from_json(const Json& j);

Json to_json(const GraphMetrics& m);
Json to_json(const SuitabilityAssessment& a);
Json to_json(const TaxonomyView& v);
Json to_json(const AnalyticsReport& r);
Json to_json(const Violation& v);
Json to_json(const RenderPlan& p);

/// Throws ValidationError on missing or mistyped fields.
GenerationSpec generation_spec_from_json(const Json& j);

/// Registry file: {"format": "guidex-registry", "version": 1, "guidelines": [...]}.
Json registry_to_json(std::span<const GuidelineRecord> records);
std::vector<GuidelineRecord> registry_from_json(const Json& j);

}  // namespace guidex
