#include "guidex/json_io.hpp"

namespace guidex {
namespace {

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.contains(name)) throw ValidationError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("field '") + name + "' has the wrong type");
  }
}

template <typename T>
T field_or(const Json& j, const char* name, T fallback) {
  if (!j.contains(name) || j.at(name).is_null()) return fallback;
  return field<T>(j, name);
}

}  // namespace

Json to_json(const GuidelineRecord& r) {
  Json j;
  j["id"] = r.id;
  j["if"] = r.if_statement;
  j["then"] = r.then_statement;
  j["if_types"] = Json::array();
  for (IfType t : r.if_types) j["if_types"].push_back(to_string(t));
  j["graph_types"] = Json::array();
  for (GraphTypeTag t : r.graph_types) j["graph_types"].push_back(to_string(t));
  j["decision_path"] = r.decision_path;
  j["vis_type"] = to_string(r.vis_type);
  j["tasks"] = r.tasks;
  j["sources"] = Json::array();
  for (const Source& s : r.sources) {
    Json js;
    js["citation"] = s.citation;
    js["scholar_url"] = s.scholar_url;
    js["study_node_range"] =
        s.study_node_range ? Json::array({s.study_node_range->min, s.study_node_range->max}) : Json();
    js["study_density_range"] =
        s.study_density_range ? Json::array({s.study_density_range->min, s.study_density_range->max}) : Json();
    j["sources"].push_back(std::move(js));
  }
  j["mapping"] = r.mapping_id ? Json(*r.mapping_id) : Json();
  return j;
}

GuidelineRecord record_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("guideline record must be an object");
  GuidelineRecord r;
  r.id = field<std::string>(j, "id");
  r.if_statement = field<std::string>(j, "if");
  r.then_statement = field<std::string>(j, "then");
  for (const auto& s : field_or<std::vector<std::string>>(j, "if_types", {})) r.if_types.insert(if_type_from_string(s));
  for (const auto& s : field<std::vector<std::string>>(j, "graph_types")) {
    r.graph_types.insert(graph_type_from_string(s));
  }
  r.decision_path = field<std::vector<std::string>>(j, "decision_path");
  r.vis_type = vis_type_from_string(field_or<std::string>(j, "vis_type", "node_link"));
  for (const auto& t : field_or<std::vector<std::string>>(j, "tasks", {})) r.tasks.insert(t);
  if (j.contains("sources")) {
    if (!j.at("sources").is_array()) throw ValidationError("field 'sources' must be an array");
    for (const Json& js : j.at("sources")) {
      if (!js.is_object()) throw ValidationError("source must be an object");
      Source s;
      s.citation = field<std::string>(js, "citation");
      s.scholar_url = field_or<std::string>(js, "scholar_url", "");
      if (js.contains("study_node_range") && !js.at("study_node_range").is_null()) {
        auto v = field<std::vector<int>>(js, "study_node_range");
        if (v.size() != 2) throw ValidationError("study_node_range must be [min, max]");
        s.study_node_range = Range<int>{v[0], v[1]};
      }
      if (js.contains("study_density_range") && !js.at("study_density_range").is_null()) {
        auto v = field<std::vector<double>>(js, "study_density_range");
        if (v.size() != 2) throw ValidationError("study_density_range must be [min, max]");
        s.study_density_range = Range<double>{v[0], v[1]};
      }
      r.sources.push_back(std::move(s));
    }
  }
  if (j.contains("mapping") && !j.at("mapping").is_null()) r.mapping_id = field<std::string>(j, "mapping");
  validate_record(r);
  return r;
}

Json to_json(const GraphMetrics& m) {
  Json j;
  j["node_count"] = m.node_count;
  j["edge_count"] = m.edge_count;
  j["density"] = m.density;
  j["detected_types"] = Json::array();
  for (GraphTypeTag t : m.detected_types) j["detected_types"].push_back(to_string(t));
  j["timestep_count"] = m.timestep_count;
  j["cluster_count"] = m.cluster_count ? Json(*m.cluster_count) : Json();
  return j;
}

Json to_json(const SuitabilityAssessment& a) {
  return Json{{"gt", to_string(a.gt)},
              {"n", to_string(a.n)},
              {"d", to_string(a.d)},
              {"summary", to_string(a.summary)},
              {"applicable", a.applicable}};
}

namespace {

Json entry_json(const ViewEntry& e) {
  Json j{{"id", e.id}};
  if (e.assessment) j["assessment"] = to_json(*e.assessment);
  return j;
}

Json category_json(const CategoryView& c) {
  Json j;
  j["name"] = c.name;
  j["path"] = c.path;
  j["entries"] = Json::array();
  for (const ViewEntry& e : c.entries) j["entries"].push_back(entry_json(e));
  if (!c.groups.empty()) {
    j["groups"] = Json::array();
    for (const ViewGroup& g : c.groups) {
      Json jg{{"key", g.key}, {"entries", Json::array()}};
      for (const ViewEntry& e : g.entries) jg["entries"].push_back(entry_json(e));
      j["groups"].push_back(std::move(jg));
    }
  }
  j["children"] = Json::array();
  for (const CategoryView& child : c.children) j["children"].push_back(category_json(child));
  return j;
}

}  // namespace

Json to_json(const TaxonomyView& v) {
  return Json{{"perspective", to_string(v.perspective)},
              {"grouping", to_string(v.grouping)},
              {"root", category_json(v.root)}};
}

Json to_json(const AnalyticsReport& r) {
  Json j;
  j["guideline_count"] = r.guideline_count;
  j["per_category"] = r.per_category;
  j["task_histogram"] = r.task_histogram;
  j["per_graph_type"] = r.per_graph_type;
  if (r.study_node_midpoints) {
    const auto& d = *r.study_node_midpoints;
    j["study_node_midpoints"] = Json{{"count", d.count}, {"min", d.min}, {"median", d.median}, {"max", d.max}};
  } else {
    j["study_node_midpoints"] = Json();
  }
  j["max_study_nodes"] = r.max_study_nodes ? Json(*r.max_study_nodes) : Json();
  return j;
}

Json to_json(const Violation& v) {
  return Json{{"rule", to_string(v.rule)}, {"ids", v.ids}, {"message", v.message}};
}

Json to_json(const RenderPlan& p) {
  Json j;
  j["main"] = p.main;
  j["combined"] = p.combined;
  j["vis_type"] = to_string(p.vis_type);
  j["layout"] = to_string(p.layout);
  j["layout_defaulted"] = p.layout_defaulted;
  j["edge_style"] = p.edge_style ? Json(to_string(*p.edge_style)) : Json();
  j["overlays"] = Json::array();
  for (OverlayKind k : p.overlays) j["overlays"].push_back(to_string(k));
  j["annotations"] = Json::array();
  for (AnnotationKind k : p.annotations) j["annotations"].push_back(to_string(k));
  j["statements"] = p.statements;
  j["unimplemented"] = p.unimplemented;
  return j;
}

GenerationSpec generation_spec_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("generation spec must be an object");
  GenerationSpec s;
  s.node_count = field<int>(j, "node_count");
  s.cluster_count = field_or<int>(j, "cluster_count", 1);
  s.timestep_count = field_or<int>(j, "timestep_count", 1);
  s.directed = field_or<bool>(j, "directed", false);
  s.attachment_edges = field_or<int>(j, "attachment_edges", 1);
  s.seed = field_or<std::uint64_t>(j, "seed", 0);
  return s;
}

Json registry_to_json(std::span<const GuidelineRecord> records) {
  Json j;
  j["format"] = "guidex-registry";
  j["version"] = 1;
  j["guidelines"] = Json::array();
  for (const GuidelineRecord& r : records) j["guidelines"].push_back(to_json(r));
  return j;
}

std::vector<GuidelineRecord> registry_from_json(const Json& j) {
  if (!j.is_object() || field_or<std::string>(j, "format", "") != "guidex-registry") {
    throw ValidationError("not a guidex registry file");
  }
  if (field<int>(j, "version") != 1) throw ValidationError("unsupported registry version");
  std::vector<GuidelineRecord> out;
  if (!j.contains("guidelines") || !j.at("guidelines").is_array()) {
    throw ValidationError("registry needs a 'guidelines' array");
  }
  for (const Json& item : j.at("guidelines")) out.push_back(record_from_json(item));
  return out;
}

}  // namespace guidex
