#include "guidex/service.hpp"

#include <sstream>

#include "guidex/combination.hpp"
#include "guidex/examples.hpp"
#include "guidex/generate.hpp"
#include "guidex/graphml.hpp"
#include "guidex/json_io.hpp"
#include "guidex/render.hpp"
#include "guidex/suitability.hpp"

namespace guidex {

std::string describe_graph(const Graph& graph, const GraphMetrics& metrics) {
  std::ostringstream out;
  out << (graph.directed() ? "directed" : "undirected") << " graph with " << metrics.node_count << " nodes and "
      << metrics.edge_count << " edges";
  if (metrics.cluster_count) out << ", " << *metrics.cluster_count << " clusters";
  if (metrics.timestep_count > 1) out << ", " << metrics.timestep_count << " timesteps";
  return out.str();
}

SessionStore::SessionStore(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

std::shared_ptr<const SessionGraph> SessionStore::put(Graph graph) {
  GraphMetrics metrics = compute_metrics(graph);
  std::string description = describe_graph(graph, metrics);
  std::lock_guard lock(mutex_);
  std::string id = "g" + std::to_string(next_++);
  auto session = std::make_shared<const SessionGraph>(
      SessionGraph{id, std::move(graph), std::move(metrics), std::move(description)});
  order_.push_front(id);
  entries_.emplace(id, std::make_pair(session, order_.begin()));
  while (entries_.size() > capacity_) {
    entries_.erase(order_.back());
    order_.pop_back();
  }
  return session;
}

std::shared_ptr<const SessionGraph> SessionStore::get(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) throw NotFound("unknown graph '" + id + "'");
  order_.splice(order_.begin(), order_, it->second.second);
  return it->second.first;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::optional<std::string> Request::param(const std::string& name) const {
  auto it = query.find(name);
  if (it == query.end()) return std::nullopt;
  return it->second;
}

int status_for(const std::exception& e) {
  if (dynamic_cast<const NotFound*>(&e)) return 404;
  if (dynamic_cast<const Conflict*>(&e) || dynamic_cast<const CombinationRejected*>(&e) ||
      dynamic_cast<const SlotConflict*>(&e)) {
    return 409;
  }
  if (dynamic_cast<const DegenerateGraph*>(&e) || dynamic_cast<const MissingData*>(&e)) return 422;
  if (dynamic_cast<const Error*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e)) return 400;
  return 500;
}

namespace {

Response json_response(const Json& j, int status = 200) {
  return Response{status, "application/json", j.dump(2) + "\n", {}};
}

Response svg_response(std::string svg) {
  return Response{200, "image/svg+xml", std::move(svg), {}};
}

Response error_response(const std::exception& e) {
  Json j{{"error", e.what()}};
  if (auto* rejected = dynamic_cast<const CombinationRejected*>(&e)) {
    j["violations"] = Json::array();
    for (const Violation& v : rejected->violations()) j["violations"].push_back(to_json(v));
  }
  if (auto* parse = dynamic_cast<const ParseError*>(&e)) {
    j["line"] = parse->line();
    j["column"] = parse->column();
  }
  return json_response(j, status_for(e));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

Json parse_body(const std::string& body) {
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("request body is not valid JSON: ") + e.what());
  }
}

std::vector<std::string> combined_ids(const Request& request) {
  std::vector<std::string> out;
  for (auto [it, end] = request.query.equal_range("combine"); it != end; ++it) {
    for (auto& id : split(it->second, ',')) out.push_back(std::move(id));
  }
  return out;
}

Graph preview_graph_for(const GuidelineRecord& r) {
  const auto& t = r.graph_types;
  if (t.count(GraphTypeTag::tree)) return example_graph(GraphTypeTag::tree);
  if (t.count(GraphTypeTag::flow_graph)) return example_graph(GraphTypeTag::flow_graph);
  if (t.count(GraphTypeTag::trajectory)) return example_graph(GraphTypeTag::trajectory);
  return preview_graph(!t.count(GraphTypeTag::undirected));
}

}  // namespace

std::string guideline_preview_svg(const GuidelineRecord& record, const MappingSpec& mapping) {
  const Graph g = preview_graph_for(record);
  RenderOptions o;
  o.canvas = Canvas{200.0, 160.0, 0.08};
  o.node_radius = 5.0;
  o.iterations = 150;
  o.taper_width = 5.0;
  o.arrow_size = 6.0;
  o.hull_padding = 6.0;
  o.bubble_padding = 6.0;
  o.bubble_grid = 3.0;
  o.bar_width = 3.0;
  o.bar_height = 12.0;
  o.banner = false;
  o.labels = false;
  const GraphMetrics metrics = compute_metrics(g);
  const GuidelineRecord selection[] = {record};
  const MappingSpec mappings[] = {mapping};
  try {
    return scene_to_svg(render(g, compose(selection, mappings, metrics), o));
  } catch (const Error&) {
    return scene_to_svg(render(g, base_plan(), o));
  }
}

Service::Service(Registry& registry, std::size_t session_capacity)
    : registry_(registry), sessions_(session_capacity) {}

Response Service::handle(const Request& request) {
  Response response;
  try {
    response = dispatch(request);
  } catch (const std::exception& e) {
    response = error_response(e);
  }
  response.headers.emplace("Access-Control-Allow-Origin", "*");
  return response;
}

Response Service::graph_created(const SessionGraph& session) {
  return json_response(Json{{"graph_id", session.id},
                            {"metrics", to_json(session.metrics)},
                            {"description", session.description}});
}

Response Service::plan_for_graph(const SessionGraph& session, const Request& request) {
  const auto main = request.param("guideline");
  if (!main) throw ValidationError("query parameter 'guideline' is required");
  const std::string id = registry_.resolve_id(*main);
  std::vector<std::string> combined;
  for (const auto& c : combined_ids(request)) combined.push_back(registry_.resolve_id(c));
  const RenderPlan plan = compose(registry_, id, combined, session.metrics);
  Json j = to_json(plan);
  j["assessment"] = to_json(assess(registry_.details(id), session.metrics));
  return json_response(j);
}

Response Service::render_graph(const SessionGraph& session, const Request& request) {
  RenderPlan plan = base_plan();
  std::optional<SuitabilityAssessment> assessment;
  const auto main = request.param("guideline");
  const auto combined_raw = combined_ids(request);
  if (main) {
    const std::string id = registry_.resolve_id(*main);
    std::vector<std::string> combined;
    for (const auto& c : combined_raw) combined.push_back(registry_.resolve_id(c));
    plan = compose(registry_, id, combined, session.metrics);
    assessment = assess(registry_.details(id), session.metrics);
  } else if (!combined_raw.empty()) {
    throw ValidationError("combined guidelines need a main guideline");
  }
  RenderOptions options;
  if (auto seed = request.param("seed")) {
    try {
      options.seed = std::stoull(*seed);
    } catch (const std::exception&) {
      throw ValidationError("seed must be a non-negative integer");
    }
  }
  Response r = svg_response(scene_to_svg(render(session.graph, plan, options)));
  if (assessment) r.headers.emplace("X-Suitability", std::string(to_string(assessment->summary)));
  return r;
}

Response Service::dispatch(const Request& request) {
  const auto seg = split(request.path, '/');
  const std::string& m = request.method;
  const auto method_not_allowed = [] { return json_response(Json{{"error", "method not allowed"}}, 405); };

  if (seg.empty() || (seg.size() == 1 && seg[0] == "health")) {
    if (m != "GET") return method_not_allowed();
    return json_response(Json{{"status", "ok"}, {"guidelines", registry_.records().size()}});
  }

  if (seg[0] == "graphs") {
    if (seg.size() == 2 && seg[1] == "upload") {
      if (m != "POST") return method_not_allowed();
      GraphmlReadResult parsed = parse_graphml(request.body);
      Response r = graph_created(*sessions_.put(std::move(parsed.graph)));
      if (!parsed.warnings.empty()) {
        Json j = Json::parse(r.body);
        j["warnings"] = parsed.warnings;
        r.body = j.dump(2) + "\n";
      }
      return r;
    }
    if (seg.size() == 2 && seg[1] == "generate") {
      if (m != "POST") return method_not_allowed();
      return graph_created(*sessions_.put(generate_graph(generation_spec_from_json(parse_body(request.body)))));
    }
    if (seg.size() >= 2 && seg[1] == "examples") {
      if (m != "GET") return method_not_allowed();
      if (seg.size() == 2) {
        Json list = Json::array();
        for (GraphTypeTag kind : kAllGraphTypes) {
          const Graph g = example_graph(kind);
          list.push_back(Json{{"kind", to_string(kind)},
                              {"description", example_description(kind)},
                              {"node_count", g.node_count()},
                              {"edge_count", g.edge_count()}});
        }
        return json_response(list);
      }
      if (seg.size() == 3) {
        GraphTypeTag kind;
        try {
          kind = graph_type_from_string(seg[2]);
        } catch (const ValidationError&) {
          throw NotFound("unknown example '" + seg[2] + "'");
        }
        return graph_created(*sessions_.put(example_graph(kind)));
      }
    }
    if (seg.size() >= 2 && seg.size() <= 3) {
      if (m != "GET") return method_not_allowed();
      const auto session = sessions_.get(seg[1]);
      if (seg.size() == 2) {
        Response r = graph_created(*session);
        Json j = Json::parse(r.body);
        j["timestep_metrics"] = Json::array();
        for (const GraphMetrics& tm : compute_timestep_metrics(session->graph)) {
          j["timestep_metrics"].push_back(to_json(tm));
        }
        r.body = j.dump(2) + "\n";
        return r;
      }
      if (seg[2] == "graphml") return Response{200, "application/graphml+xml", write_graphml(session->graph), {}};
      if (seg[2] == "render") return render_graph(*session, request);
      if (seg[2] == "plan") return plan_for_graph(*session, request);
    }
  }

  if (seg[0] == "guidelines") {
    if (seg.size() == 1) {
      if (m == "POST") {
        const std::string id = registry_.add(record_from_json(parse_body(request.body)));
        return json_response(to_json(registry_.details(id)), 201);
      }
      if (m != "GET") return method_not_allowed();
      const Perspective perspective = perspective_from_string(request.param("perspective").value_or("decision"));
      const Grouping grouping = grouping_from_string(request.param("grouping").value_or("none"));
      if (auto graph_id = request.param("graph")) {
        const auto session = sessions_.get(*graph_id);
        return json_response(to_json(registry_.list(perspective, grouping, &session->metrics)));
      }
      return json_response(to_json(registry_.list(perspective, grouping, nullptr)));
    }
    if (seg.size() == 2) {
      if (m == "PUT") {
        GuidelineRecord record = record_from_json(parse_body(request.body));
        if (record.id != seg[1]) throw ValidationError("record id does not match the URL");
        registry_.replace(std::move(record));
        return json_response(to_json(registry_.details(seg[1])));
      }
      if (m != "GET") return method_not_allowed();
      const GuidelineRecord r = registry_.details(seg[1]);
      Json j = to_json(r);
      j["statement"] = r.statement();
      j["implemented"] = !registry_.mapping_for(r.id).unimplemented;
      if (auto graph_id = request.param("graph")) j["assessment"] = to_json(assess(r, sessions_.get(*graph_id)->metrics));
      return json_response(j);
    }
    if (seg.size() == 3 && seg[2] == "preview") {
      if (m != "GET") return method_not_allowed();
      return svg_response(guideline_preview_svg(registry_.details(seg[1]), registry_.mapping_for(seg[1])));
    }
  }

  if (seg.size() == 1 && seg[0] == "analytics") {
    if (m != "GET") return method_not_allowed();
    return json_response(to_json(registry_.analytics()));
  }

  if (seg.size() == 1 && seg[0] == "mappings") {
    if (m != "GET") return method_not_allowed();
    Json list = Json::array();
    for (const MappingSpec& spec : mapping_catalog()) {
      Json j{{"id", spec.id}, {"vis_type", to_string(spec.vis_type)}};
      j["layout"] = spec.layout ? Json(to_string(*spec.layout)) : Json();
      j["edge_style"] = spec.edge_style ? Json(to_string(*spec.edge_style)) : Json();
      j["overlays"] = Json::array();
      for (OverlayKind k : spec.overlays) j["overlays"].push_back(to_string(k));
      j["annotations"] = Json::array();
      for (AnnotationKind k : spec.annotations) j["annotations"].push_back(to_string(k));
      list.push_back(std::move(j));
    }
    return json_response(list);
  }

  throw NotFound("no endpoint " + request.method + " " + request.path);
}

}  // namespace guidex
