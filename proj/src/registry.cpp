#include "guidex/registry.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>
#include <system_error>

#include "guidex/json_io.hpp"

namespace guidex {

std::string_view to_string(Perspective p) {
  switch (p) {
    case Perspective::decision: return "decision";
    case Perspective::graph_type: return "graph_type";
    case Perspective::if_type: return "if_type";
    case Perspective::task: return "task";
  }
  return "?";
}

std::string_view to_string(Grouping g) {
  switch (g) {
    case Grouping::none: return "none";
    case Grouping::same_if: return "same_if";
    case Grouping::same_then: return "same_then";
  }
  return "?";
}

Perspective perspective_from_string(std::string_view s) {
  for (Perspective p : {Perspective::decision, Perspective::graph_type, Perspective::if_type, Perspective::task}) {
    if (to_string(p) == s) return p;
  }
  // The sort popup calls the foundational perspective "category".
  if (s == "category") return Perspective::decision;
  throw ValidationError("unknown perspective '" + std::string(s) + "'");
}

Grouping grouping_from_string(std::string_view s) {
  for (Grouping g : {Grouping::none, Grouping::same_if, Grouping::same_then}) {
    if (to_string(g) == s) return g;
  }
  throw ValidationError("unknown grouping '" + std::string(s) + "'");
}

namespace {

constexpr const char* kUnclassified = "unclassified";

CategoryView skeleton(const TaxonomyNode& node, std::vector<std::string> path) {
  CategoryView view{node.name, path, {}, {}, {}};
  for (const TaxonomyNode& child : node.children) {
    auto child_path = path;
    child_path.push_back(child.name);
    view.children.push_back(skeleton(child, std::move(child_path)));
  }
  return view;
}

TaxonomyNode flat_tree(std::string root, const std::vector<std::string>& names) {
  TaxonomyNode node{std::move(root), {}};
  for (const auto& n : names) node.children.push_back({n, {}});
  return node;
}

CategoryView* descend(CategoryView& root, const std::vector<std::string>& path) {
  CategoryView* at = &root;
  for (const std::string& step : path) {
    auto it = std::find_if(at->children.begin(), at->children.end(),
                           [&](const CategoryView& c) { return c.name == step; });
    if (it == at->children.end()) {
      // Only the unclassified bucket is created on demand.
      auto p = at->path;
      p.push_back(step);
      at->children.push_back(CategoryView{step, std::move(p), {}, {}, {}});
      it = at->children.end() - 1;
    }
    at = &*it;
  }
  return at;
}

bool prune(CategoryView& view) {
  std::erase_if(view.children, [](CategoryView& c) { return !prune(c); });
  return !view.entries.empty() || !view.children.empty();
}

std::vector<std::vector<std::string>> placements(const GuidelineRecord& r, Perspective p) {
  std::vector<std::vector<std::string>> out;
  switch (p) {
    case Perspective::decision:
      out.push_back(r.decision_path);
      break;
    case Perspective::graph_type:
      for (GraphTypeTag t : r.graph_types) out.push_back({std::string(to_string(t))});
      break;
    case Perspective::if_type:
      for (IfType t : r.if_types) out.push_back({std::string(to_string(t))});
      break;
    case Perspective::task:
      for (const std::string& t : r.tasks) out.push_back(split_task(t));
      break;
  }
  if (out.empty()) out.push_back({kUnclassified});
  return out;
}

void order_and_group(CategoryView& view, Grouping grouping, const std::map<std::string, const GuidelineRecord*>& by_id) {
  std::sort(view.entries.begin(), view.entries.end(), [](const ViewEntry& a, const ViewEntry& b) {
    const int ra = a.assessment ? rank(a.assessment->summary) : 0;
    const int rb = b.assessment ? rank(b.assessment->summary) : 0;
    return std::tie(ra, a.id) < std::tie(rb, b.id);
  });
  if (grouping != Grouping::none) {
    for (const ViewEntry& e : view.entries) {
      const GuidelineRecord& r = *by_id.at(e.id);
      std::string key = normalize_statement(grouping == Grouping::same_if ? r.if_statement : r.then_statement);
      auto it = std::find_if(view.groups.begin(), view.groups.end(), [&](const ViewGroup& g) { return g.key == key; });
      if (it == view.groups.end()) {
        view.groups.push_back(ViewGroup{std::move(key), {e}});
      } else {
        it->entries.push_back(e);
      }
    }
  }
  for (CategoryView& c : view.children) order_and_group(c, grouping, by_id);
}

}  // namespace

TaxonomyView list_guidelines(std::span<const GuidelineRecord> records, Perspective perspective, Grouping grouping,
                             const GraphMetrics* metrics) {
  TaxonomyNode tree;
  switch (perspective) {
    case Perspective::decision:
      tree = decision_tree();
      break;
    case Perspective::task:
      tree = task_tree();
      break;
    case Perspective::graph_type: {
      std::vector<std::string> names;
      for (GraphTypeTag t : kAllGraphTypes) names.emplace_back(to_string(t));
      tree = flat_tree("graph_type", names);
      break;
    }
    case Perspective::if_type: {
      std::vector<std::string> names;
      for (IfType t : kAllIfTypes) names.emplace_back(to_string(t));
      tree = flat_tree("if_type", names);
      break;
    }
  }

  TaxonomyView view{perspective, grouping, skeleton(tree, {})};
  std::map<std::string, const GuidelineRecord*> by_id;
  for (const GuidelineRecord& r : records) {
    by_id[r.id] = &r;
    std::optional<SuitabilityAssessment> assessment;
    if (metrics != nullptr) assessment = assess(r, *metrics);
    for (const auto& path : placements(r, perspective)) {
      descend(view.root, path)->entries.push_back(ViewEntry{r.id, assessment});
    }
  }
  prune(view.root);
  order_and_group(view.root, grouping, by_id);
  return view;
}

AnalyticsReport corpus_analytics(std::span<const GuidelineRecord> records) {
  AnalyticsReport report;
  report.guideline_count = records.size();
  std::vector<double> midpoints;
  for (const GuidelineRecord& r : records) {
    std::string prefix;
    for (const std::string& step : r.decision_path) {
      prefix += (prefix.empty() ? "" : "/") + step;
      ++report.per_category[prefix];
    }
    for (const std::string& t : r.tasks) ++report.task_histogram[t];
    for (GraphTypeTag t : r.graph_types) ++report.per_graph_type[std::string(to_string(t))];
    for (const Source& s : r.sources) {
      if (!s.study_node_range) continue;
      midpoints.push_back(0.5 * (s.study_node_range->min + s.study_node_range->max));
      report.max_study_nodes = std::max(report.max_study_nodes.value_or(s.study_node_range->max),
                                        s.study_node_range->max);
    }
  }
  if (!midpoints.empty()) {
    std::sort(midpoints.begin(), midpoints.end());
    const std::size_t n = midpoints.size();
    const double median = n % 2 == 1 ? midpoints[n / 2] : 0.5 * (midpoints[n / 2 - 1] + midpoints[n / 2]);
    report.study_node_midpoints = Distribution{n, midpoints.front(), median, midpoints.back()};
  }
  return report;
}

Registry::Registry(std::vector<GuidelineRecord> records, std::optional<std::filesystem::path> file)
    : records_(std::move(records)), file_(std::move(file)) {
  std::set<std::string> ids;
  for (const GuidelineRecord& r : records_) {
    validate_record(r);
    if (!ids.insert(r.id).second) throw Conflict("duplicate guideline id '" + r.id + "'");
  }
}

std::vector<GuidelineRecord> Registry::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw NotFound("cannot open registry file '" + file.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("registry file '" + file.string() + "': " + e.what());
  }
  return registry_from_json(j);
}

std::unique_ptr<Registry> Registry::open(const std::filesystem::path& file) {
  return std::make_unique<Registry>(load(file), file);
}

std::vector<GuidelineRecord>::const_iterator Registry::find_locked(std::string_view id) const {
  return std::find_if(records_.begin(), records_.end(), [&](const GuidelineRecord& r) { return r.id == id; });
}

std::vector<GuidelineRecord> Registry::records() const {
  std::shared_lock lock(mutex_);
  return records_;
}

GuidelineRecord Registry::details(std::string_view id) const {
  std::shared_lock lock(mutex_);
  auto it = find_locked(id);
  if (it == records_.end()) throw NotFound("unknown guideline '" + std::string(id) + "'");
  return *it;
}

bool Registry::contains(std::string_view id) const {
  std::shared_lock lock(mutex_);
  return find_locked(id) != records_.end();
}

std::string Registry::resolve_id(std::string_view query) const {
  std::shared_lock lock(mutex_);
  if (find_locked(query) != records_.end()) return std::string(query);
  std::string q(query);
  std::replace(q.begin(), q.end(), '_', '-');
  std::vector<std::string> hits;
  for (const GuidelineRecord& r : records_) {
    if (r.id.starts_with(q)) hits.push_back(r.id);
  }
  if (hits.size() == 1) return hits.front();
  if (hits.empty()) throw NotFound("unknown guideline '" + std::string(query) + "'");
  std::string list;
  for (const auto& h : hits) list += " " + h;
  throw NotFound("ambiguous guideline '" + std::string(query) + "':" + list);
}

std::string Registry::add(GuidelineRecord record) {
  validate_record(record);
  std::unique_lock lock(mutex_);
  if (find_locked(record.id) != records_.end()) throw Conflict("guideline '" + record.id + "' already exists");
  records_.push_back(std::move(record));
  try {
    persist_locked();
  } catch (...) {
    records_.pop_back();
    throw;
  }
  return records_.back().id;
}

void Registry::replace(GuidelineRecord record) {
  validate_record(record);
  std::unique_lock lock(mutex_);
  auto it = std::find_if(records_.begin(), records_.end(),
                         [&](const GuidelineRecord& r) { return r.id == record.id; });
  if (it == records_.end()) throw NotFound("unknown guideline '" + record.id + "'");
  GuidelineRecord previous = std::exchange(*it, std::move(record));
  try {
    persist_locked();
  } catch (...) {
    *it = std::move(previous);
    throw;
  }
}

MappingSpec Registry::mapping_for(std::string_view id) const {
  GuidelineRecord r = details(id);
  if (!r.mapping_id) {
    MappingSpec stub = stub_mapping(r.id);
    stub.vis_type = r.vis_type;
    return stub;
  }
  return *find_mapping(*r.mapping_id);
}

TaxonomyView Registry::list(Perspective perspective, Grouping grouping, const GraphMetrics* metrics) const {
  std::shared_lock lock(mutex_);
  return list_guidelines(records_, perspective, grouping, metrics);
}

AnalyticsReport Registry::analytics() const {
  std::shared_lock lock(mutex_);
  return corpus_analytics(records_);
}

namespace {

void write_atomically(const std::filesystem::path& file, const std::string& content) {
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw Error("cannot replace '" + file.string() + "': " + ec.message());
}

}  // namespace

void Registry::persist_locked() const {
  if (!file_) return;
  write_atomically(*file_, registry_to_json(records_).dump(2) + "\n");
}

void Registry::save(const std::filesystem::path& file) const {
  std::shared_lock lock(mutex_);
  write_atomically(file, registry_to_json(records_).dump(2) + "\n");
}

}  // namespace guidex
