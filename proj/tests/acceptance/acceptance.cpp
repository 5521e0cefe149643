#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "guidex/combination.hpp"
#include "guidex/examples.hpp"
#include "guidex/generate.hpp"
#include "guidex/graphml.hpp"
#include "guidex/json_io.hpp"
#include "guidex/layout.hpp"
#include "guidex/registry.hpp"
#include "guidex/render.hpp"
#include "guidex/suitability.hpp"
#include "render_checks.hpp"
#include "support.hpp"

extern "C" void __gcov_reset(void);
extern "C" void __gcov_dump(void);

namespace {

using namespace guidex;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kDensityTolerance = 1e-4;
constexpr double kSparseDensity = 0.0637;
constexpr double kDenseDensity = 0.1012;
constexpr double kUseCaseSeconds = 1.0;
constexpr double kPartialTolerance = 0.01;
constexpr int kRoundTrips = 1000;
constexpr int kFuzzCases = 3000;
constexpr int kRenderGraphs = 100;
constexpr int kRenderMaxNodes = 30;
constexpr int kExhaustiveMaxNodes = 5;
constexpr int kOrthogonalDags = 200;
constexpr int kMaxStudyNodes = 80;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string data_path(const std::string& name) { return std::string(GUIDEX_DATA_DIR) + "/" + name; }

std::string fmt(double v, int digits = 4) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << v;
  return out.str();
}

std::string statuses(const SuitabilityAssessment& a) {
  return "GT " + std::string(to_string(a.gt)) + ", #N " + std::string(to_string(a.n)) + ", #D " +
         std::string(to_string(a.d)) + " -> " + std::string(to_string(a.summary));
}

bool all_match(const SuitabilityAssessment& a) {
  return a.gt == CriterionStatus::match && a.n == CriterionStatus::match && a.d == CriterionStatus::match;
}

Scene render_plan(const Registry& reg, const Graph& g, const std::string& main, std::vector<std::string> combined = {}) {
  return render(g, compose(reg, main, combined, compute_metrics(g)));
}

Outcome use_case_part1() {
  Outcome o;
  const auto t0 = Clock::now();
  const Registry reg = Registry::seeded();
  const Graph g = parse_graphml(read_file(data_path("use_case_sparse.graphml"))).graph;
  const GraphMetrics m = compute_metrics(g);
  const SuitabilityAssessment tapered = assess(reg.details("tapered-edges"), m);
  const Scene scene = render_plan(reg, g, "tapered-edges");
  const std::string svg = scene_to_svg(scene);
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(m.node_count == 50 && m.edge_count == 156, "expected 50 nodes and 156 edges");
  o.require(std::abs(m.density - kSparseDensity) <= kDensityTolerance, "density " + fmt(m.density));
  o.require(all_match(tapered) && tapered.summary == Summary::well_suited, "tapered-edges: " + statuses(tapered));
  o.require(testing::with_role(scene, "edge").size() == 156 && !svg.empty(), "render incomplete");
  o.require(seconds < kUseCaseSeconds, "took " + fmt(seconds, 3) + " s");
  if (o.pass) {
    o.detail = "density " + fmt(m.density) + ", tapered-edges " + statuses(tapered) + ", " + fmt(seconds, 3) + " s";
  }
  return o;
}

Outcome use_case_part2() {
  Outcome o;
  const auto t0 = Clock::now();
  const Registry reg = Registry::seeded();
  const Graph g = parse_graphml(read_file(data_path("use_case_dense.graphml"))).graph;
  const GraphMetrics m = compute_metrics(g);
  const SuitabilityAssessment tapered = assess(reg.details("tapered-edges"), m);
  const SuitabilityAssessment partial = assess(reg.details("partially-drawn-edges"), m);
  const Scene a = render_plan(reg, g, "tapered-edges");
  const Scene b = render_plan(reg, g, "partially-drawn-edges");
  scene_to_svg(a);
  scene_to_svg(b);
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(m.node_count == 50 && m.edge_count == 248, "expected 50 nodes and 248 edges");
  o.require(std::abs(m.density - kDenseDensity) <= kDensityTolerance, "density " + fmt(m.density));
  o.require(tapered.gt == CriterionStatus::match && tapered.n == CriterionStatus::match &&
                tapered.d == CriterionStatus::no_match && tapered.summary == Summary::medium,
            "tapered-edges: " + statuses(tapered));
  o.require(all_match(partial) && partial.summary == Summary::well_suited,
            "partially-drawn-edges: " + statuses(partial));
  o.require(testing::with_role(a, "edge").size() == 248 && testing::with_role(b, "edge").size() == 248,
            "render incomplete");
  o.require(seconds < kUseCaseSeconds, "took " + fmt(seconds, 3) + " s");
  if (o.pass) {
    o.detail = "density " + fmt(m.density) + ", tapered-edges " + std::string(to_string(tapered.summary)) +
               " (#D " + std::string(to_string(tapered.d)) + "), partially-drawn-edges " +
               std::string(to_string(partial.summary)) + ", " + fmt(seconds, 3) + " s";
  }
  return o;
}

Outcome combination_suite() {
  Outcome o;
  const Registry reg = Registry::seeded();
  const Graph directed = use_case_graph(UseCase::sparse);
  const Graph undirected = example_graph(GraphTypeTag::undirected);

  struct Valid {
    const Graph* graph;
    std::string main;
    std::vector<std::string> combined;
  };
  const std::vector<Valid> valid{
      {&directed, "overloaded-orthogonal-layout", {"tapered-edges"}},
      {&undirected, "highly-connected-hull", {"bubble-sets-groups", "crossing-angle"}},
      {&undirected, "force-directed-layout", {"edge-bar-charts"}},
      {&undirected, "highly-connected-hull", {"edge-bar-charts"}},
  };
  for (const Valid& v : valid) {
    const std::string name = v.main + " + " + v.combined.front();
    const auto violations = validate_combination(reg, v.main, v.combined, compute_metrics(*v.graph));
    o.require(violations.empty(), name + " rejected");
    try {
      const RenderPlan plan = compose(reg, v.main, v.combined, compute_metrics(*v.graph));
      o.require(plan.filled_slots() >= 1 + v.combined.size(), name + " fills too few slots");
      render(*v.graph, plan);
    } catch (const Error& e) {
      o.require(false, name + ": " + e.what());
    }
  }

  struct Invalid {
    std::string main;
    std::string other;
    Rule rule;
  };
  const std::vector<Invalid> invalid{
      {"tapered-edges", "partially-drawn-edges", Rule::R2},
      {"force-directed-layout", "adjacency-matrix", Rule::R3},
      {"tapered-edges", "adjacency-matrix", Rule::R3},
  };
  for (const Invalid& c : invalid) {
    const std::vector<std::string> combined{c.other};
    const auto violations = validate_combination(reg, c.main, combined, compute_metrics(directed));
    bool found = false;
    for (const Violation& v : violations) {
      found |= v.rule == c.rule && v.ids == std::vector<std::string>{std::min(c.main, c.other), std::max(c.main, c.other)};
    }
    o.require(found, c.main + " + " + c.other + " not rejected with " + std::string(to_string(c.rule)));
    bool thrown = false;
    try {
      compose(reg, c.main, combined, compute_metrics(directed));
    } catch (const CombinationRejected&) {
      thrown = true;
    }
    o.require(thrown, c.main + " + " + c.other + " composed");
  }
  if (o.pass) o.detail = std::to_string(valid.size()) + " reference plans valid, R2 and R3 pairs rejected";
  return o;
}

struct BranchReport {
  std::size_t total = 0;
  std::size_t taken = 0;
  std::string error;
  std::vector<std::string> missed;
};

std::string run(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  return out;
}

/// Branch coverage of the listed functions in the instrumented suitability
/// object, ignoring exception edges.
BranchReport branch_coverage(const std::function<void()>& workload, const std::vector<std::string>& functions) {
  BranchReport report;
  const fs::path object = SUITABILITY_COV_OBJECT;
  fs::path gcda = object;
  gcda.replace_extension(".gcda");
  __gcov_reset();
  workload();
  fs::remove(gcda);
  __gcov_dump();
  if (!fs::exists(gcda)) {
    report.error = "no coverage data at " + gcda.string();
    return report;
  }
  const std::string json = run("cd '" + object.parent_path().string() + "' && '" + std::string(GUIDEX_GCOV) +
                               "' -j -t -b '" + gcda.string() + "' 2>/dev/null");
  Json doc;
  try {
    doc = Json::parse(json);
  } catch (const std::exception&) {
    report.error = "gcov produced no JSON";
    return report;
  }
  for (const Json& file : doc["files"]) {
    if (file["file"].get<std::string>().find("suitability.cpp") == std::string::npos) continue;
    for (const std::string& name : functions) {
      bool seen = false;
      for (const Json& fn : file["functions"]) {
        const std::string demangled = fn["demangled_name"];
        if (demangled.rfind("guidex::" + name + "(", 0) != 0) continue;
        seen = true;
        const int first = fn["start_line"];
        const int last = fn["end_line"];
        for (const Json& line : file["lines"]) {
          const int ln = line["line_number"];
          if (ln < first || ln > last) continue;
          int index = 0;
          for (const Json& b : line["branches"]) {
            if (b.value("throw", false)) continue;
            ++report.total;
            if (b["count"].get<long long>() > 0) {
              ++report.taken;
            } else {
              report.missed.push_back(name + ":" + std::to_string(ln) + "#" + std::to_string(index));
            }
            ++index;
          }
        }
      }
      if (!seen) report.error = "function " + name + " missing from coverage data";
    }
  }
  if (report.total == 0 && report.error.empty()) report.error = "no branches found";
  return report;
}

GuidelineRecord guideline_with(GraphTypeSet types, std::vector<Source> sources) {
  GuidelineRecord r;
  r.id = "probe";
  r.graph_types = std::move(types);
  r.sources = std::move(sources);
  return r;
}

bool in_margin(double v, double lo, double hi) { return v >= 0.8 * lo && v <= 1.2 * hi; }

Outcome suitability_truth_table() {
  Outcome o;
  const std::vector<CriterionStatus> all{CriterionStatus::match, CriterionStatus::mismatch, CriterionStatus::no_match,
                                         CriterionStatus::moot};
  std::size_t combos = 0;
  for (auto gt : all) {
    for (auto n : all) {
      for (auto d : all) {
        ++combos;
        const Summary s = summarize(gt, n, d);
        const bool gt_ok = gt == CriterionStatus::match;
        const bool all_ok = gt_ok && n == CriterionStatus::match && d == CriterionStatus::match;
        const Summary expected = !gt_ok ? Summary::not_suited : all_ok ? Summary::well_suited : Summary::medium;
        o.require(s == expected, "summarize mismatch at combination " + std::to_string(combos));
      }
    }
  }

  // Node ranges around N = 50 and density ranges around 0.1.
  const std::vector<std::optional<Range<int>>> node_ranges{std::nullopt, Range<int>{40, 60}, Range<int>{60, 70},
                                                           Range<int>{10, 20}, Range<int>{70, 90}, Range<int>{10, 41}};
  const std::vector<std::optional<Range<double>>> density_ranges{
      std::nullopt, Range<double>{0.05, 0.09}, Range<double>{0.12, 0.2}, Range<double>{0.2, 0.3},
      Range<double>{0.01, 0.02}};
  struct TypeCase {
    GraphTypeSet guideline;
    GraphTypeSet detected;
    bool match;
  };
  const std::vector<TypeCase> type_cases{
      {{GraphTypeTag::directed}, {GraphTypeTag::directed}, true},
      {{GraphTypeTag::tree}, {GraphTypeTag::directed, GraphTypeTag::dag}, false},
      {{GraphTypeTag::dag}, {GraphTypeTag::directed, GraphTypeTag::dag, GraphTypeTag::tree}, true},
      {{GraphTypeTag::directed}, {GraphTypeTag::directed, GraphTypeTag::tree}, true},
      {{GraphTypeTag::undirected}, {GraphTypeTag::directed}, false},
      {{GraphTypeTag::undirected, GraphTypeTag::directed}, {GraphTypeTag::undirected}, true},
      {{}, {GraphTypeTag::undirected}, false},
  };
  GraphMetrics m;
  m.node_count = 50;
  m.edge_count = 245;
  m.density = 0.1;
  std::size_t assessed = 0;
  std::set<std::tuple<int, int, int>> reached;

  auto workload = [&] {
    for (const TypeCase& tc : type_cases) {
      m.detected_types = tc.detected;
      for (const auto& nr : node_ranges) {
        for (const auto& dr : density_ranges) {
          // One source with both ranges, the two ranges split across sources
          // behind a decoy, and no sources at all.
          const std::vector<std::vector<Source>> layouts{
              {Source{"a", "", nr, dr}},
              {Source{"decoy", "", Range<int>{1000, 2000}, Range<double>{0.9, 1.0}}, Source{"n", "", nr, std::nullopt},
               Source{"d", "", std::nullopt, dr}},
              {},
          };
          for (const auto& sources : layouts) {
            const SuitabilityAssessment a = assess(guideline_with(tc.guideline, sources), m);
            ++assessed;
            bool n_ok = false;
            bool d_ok = false;
            for (const Source& s : sources) {
              n_ok |= s.study_node_range && in_margin(50.0, s.study_node_range->min, s.study_node_range->max);
              d_ok |= s.study_density_range && in_margin(0.1, s.study_density_range->min, s.study_density_range->max);
            }
            SuitabilityAssessment want;
            if (tc.match) {
              want.gt = CriterionStatus::match;
              want.n = n_ok ? CriterionStatus::match : CriterionStatus::no_match;
              want.d = d_ok ? CriterionStatus::match : CriterionStatus::no_match;
            } else {
              want.gt = CriterionStatus::mismatch;
              want.n = want.d = CriterionStatus::moot;
            }
            want.summary = !tc.match ? Summary::not_suited : (n_ok && d_ok) ? Summary::well_suited : Summary::medium;
            want.applicable = tc.match;
            o.require(a == want, "assess disagrees with the oracle: " + statuses(a));
            o.require(a.applicable == (a.gt == CriterionStatus::match), "applicable differs from GT");
            o.require((a.summary == Summary::well_suited) == all_match(a), "well_suited without three matches");
            o.require((a.summary == Summary::not_suited) == (a.gt != CriterionStatus::match),
                      "not_suited without a GT mismatch");
            reached.insert({static_cast<int>(a.gt), static_cast<int>(a.n), static_cast<int>(a.d)});
          }
        }
      }
    }
    // Exact margin boundaries.
    m.detected_types = {GraphTypeTag::directed};
    const auto edge_n = assess(guideline_with({GraphTypeTag::directed}, {Source{"", "", Range<int>{60, 60}, {}}}), m);
    o.require(edge_n.n == CriterionStatus::match, "N = 0.8 * min must match");
    const auto over_n =
        assess(guideline_with({GraphTypeTag::directed}, {Source{"", "", Range<int>{63, 64}, {}}}), m);
    o.require(over_n.n == CriterionStatus::no_match, "N below 0.8 * min must not match");
  };

  const BranchReport cov = branch_coverage(workload, {"assess", "summarize", "within_study_range"});
  o.require(reached.size() == 5, "expected 5 reachable status triples, reached " + std::to_string(reached.size()));
  o.require(cov.error.empty(), cov.error);
  std::string missed;
  for (const auto& mb : cov.missed) missed += " " + mb;
  o.require(cov.total > 0 && cov.taken == cov.total,
            "branch coverage " + std::to_string(cov.taken) + "/" + std::to_string(cov.total) + ", missed:" + missed);
  if (o.pass) {
    o.detail = std::to_string(combos) + " status triples, " + std::to_string(assessed) +
               " oracle-checked assessments, branch coverage of assess and its helpers " + std::to_string(cov.taken) + "/" +
               std::to_string(cov.total);
  }
  return o;
}

Outcome graphml_round_trip() {
  Outcome o;
  Rng rng(20240601);
  for (int i = 0; i < kRoundTrips && o.pass; ++i) {
    const Graph g = testing::random_rich_graph(rng, 40);
    const std::string doc = write_graphml(g);
    try {
      const Graph back = parse_graphml(doc).graph;
      o.require(back == g, "round trip " + std::to_string(i) + " differs");
      o.require(write_graphml(back) == doc, "round trip " + std::to_string(i) + " rewrites different bytes");
    } catch (const Error& e) {
      o.require(false, "round trip " + std::to_string(i) + ": " + e.what());
    }
  }

  std::vector<std::string> corpus{
      "",
      "<",
      "not xml at all",
      "<graphml>",
      "<graphml></graphml>",
      "<graphml><graph/></graphml>",
      "<graphml><graph edgedefault=\"sideways\"/></graphml>",
      "<graphml><graph edgedefault=\"directed\"><node/></graph></graphml>",
      "<graphml><graph edgedefault=\"directed\"><node id=\"a\"/><node id=\"a\"/></graph></graphml>",
      "<graphml><graph edgedefault=\"directed\"><edge source=\"a\" target=\"b\"/></graph></graphml>",
      "<graphml><graph edgedefault=\"directed\"><node id=\"a\"/><edge source=\"a\" target=\"a\"/></graph></graphml>",
      "<graphml><graph edgedefault=\"directed\"><node id=\"a\"><graph/></node></graph></graphml>",
      "<graphml><graph edgedefault=\"directed\"><node id=\"a\"><port name=\"p\"/></node></graph></graphml>",
      "<!DOCTYPE g [<!ENTITY e \"x\">]><graphml>&e;</graphml>",
      "<!DOCTYPE g [<!ENTITY a \"aaaaaaaaaa\"><!ENTITY b \"&a;&a;&a;&a;&a;&a;&a;&a;\">]><graphml>&b;</graphml>",
      "<graphml><key id=\"k\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/><graph edgedefault=\"directed\">"
      "<node id=\"a\"><data key=\"k\">NaNx</data></node></graph></graphml>",
      "<graphml><graph edgedefault=\"directed\"><node id=\"a\"><data key=\"missing\">1</data></node></graph></graphml>",
      std::string("<graphml>\0</graphml>", 20),
      "\xEF\xBB\xBF<graphml><graph edgedefault=\"undirected\"/></graphml>",
      "<graphml><graph edgedefault=\"directed\"></graph><graph edgedefault=\"directed\"></graph></graphml>",
      std::string(100000, '<'),
  };
  const std::string base = write_graphml(testing::random_rich_graph(rng, 10));
  for (int i = 0; i < kFuzzCases; ++i) {
    std::string doc = base;
    const auto edits = 1 + rng.below(5);
    for (std::uint64_t k = 0; k < edits && !doc.empty(); ++k) {
      const auto pos = rng.below(doc.size());
      switch (rng.below(6)) {
        case 0: doc[pos] = static_cast<char>(rng.below(256)); break;
        case 1: doc.erase(pos, 1 + rng.below(16)); break;
        case 2: doc.insert(pos, "<edge source=\"zz\" target=\"n0\"/>"); break;
        case 3: doc.insert(pos, doc.substr(rng.below(doc.size()), 1 + rng.below(64))); break;
        case 4: doc.insert(pos, "&amp;&#0;&#xD800;]]><![CDATA["); break;
        default: doc.resize(pos); break;
      }
    }
    corpus.push_back(std::move(doc));
  }
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < corpus.size() && o.pass; ++i) {
    try {
      parse_graphml(corpus[i]);
    } catch (const Error&) {
      ++rejected;
    } catch (const std::exception& e) {
      o.require(false, "fuzz case " + std::to_string(i) + " escaped as " + e.what());
    }
  }
  if (o.pass) {
    o.detail = std::to_string(kRoundTrips) + " round trips equal, " + std::to_string(corpus.size()) +
               " malformed inputs handled (" + std::to_string(rejected) + " structured errors)";
  }
  return o;
}

RenderPlan plan_of(std::optional<EdgeStyle> style, std::set<OverlayKind> overlays, std::set<AnnotationKind> annotations,
                   LayoutKind layout, VisType vis = VisType::node_link) {
  RenderPlan p;
  p.edge_style = style;
  p.overlays = std::move(overlays);
  p.annotations = std::move(annotations);
  p.layout = layout;
  p.layout_defaulted = layout == LayoutKind::force_directed;
  p.vis_type = vis;
  return p;
}

Outcome rendering_properties() {
  Outcome o;
  RenderOptions opts;
  opts.banner = false;
  opts.iterations = 150;
  o.require(std::abs(opts.partial_fraction - 0.75) < 1e-12 && kPartialTolerance == 0.01, "unexpected defaults");
  Rng rng(77);
  std::map<std::string, int> checked;
  for (int i = 0; i < kRenderGraphs && o.pass; ++i) {
    GenerationSpec spec = testing::random_spec(rng, kRenderMaxNodes, 1);
    const std::string tag = "graph " + std::to_string(i) + ": ";
    Graph g = generate_graph(spec);
    o.require(g.node_count() <= static_cast<std::size_t>(kRenderMaxNodes), tag + "too many nodes");
    GenerationSpec dspec = spec;
    dspec.directed = true;
    const Graph dg = generate_graph(dspec);
    auto note = [&](const std::string& name, const std::string& failure) {
      o.require(failure.empty(), tag + name + ": " + failure);
      ++checked[name];
    };
    note("taper", testing::check_taper(dg, render(dg, plan_of(EdgeStyle::tapered, {}, {}, LayoutKind::force_directed), opts), opts));
    note("partial", testing::check_partial(
                        dg, render(dg, plan_of(EdgeStyle::partially_drawn, {}, {}, LayoutKind::force_directed), opts), opts));
    note("hull", testing::check_hulls(
                     g, render(g, plan_of({}, {OverlayKind::cluster_hulls}, {}, LayoutKind::clustered), opts), opts));
    note("bubble", testing::check_bubbles(
                       g, render(g, plan_of({}, {OverlayKind::bubble_sets}, {}, LayoutKind::force_directed), opts), opts));
    GenerationSpec tspec = spec;
    tspec.timestep_count = 2 + static_cast<int>(rng.below(4));
    const Graph dyn = generate_graph(tspec);
    note("matrix", testing::check_matrix(
                       dyn, render(dyn, plan_of({}, {}, {}, LayoutKind::matrix, VisType::matrix), opts)));
    note("small multiples", testing::check_small_multiples(
                                dyn, render(dyn, plan_of({}, {}, {AnnotationKind::fixed_layout}, LayoutKind::force_directed), opts)));
  }
  if (o.pass) {
    o.detail.clear();
    for (const auto& [name, n] : checked) o.detail += (o.detail.empty() ? "" : ", ") + name + " " + std::to_string(n);
    o.detail += " graphs";
  }
  return o;
}

Outcome analytics_report() {
  Outcome o;
  const Registry reg = Registry::seeded();
  const AnalyticsReport r = reg.analytics();
  std::size_t nodes = 0;
  std::size_t edges = 0;
  int max_nodes = -1;
  for (const GuidelineRecord& g : reg.records()) {
    nodes += g.decision_path.front() == "nodes";
    edges += g.decision_path.front() == "edges";
    for (const Source& s : g.sources) {
      if (s.study_node_range) max_nodes = std::max(max_nodes, s.study_node_range->max);
    }
  }
  const auto count = [&](const char* key) { return r.per_category.count(key) ? r.per_category.at(key) : 0; };
  o.require(count("nodes") == nodes && count("edges") == edges, "category counts disagree with a direct count");
  o.require(nodes < edges, "nodes " + std::to_string(nodes) + " not below edges " + std::to_string(edges));
  o.require(r.max_study_nodes && *r.max_study_nodes == max_nodes, "max study node count disagrees");
  o.require(r.max_study_nodes && *r.max_study_nodes <= kMaxStudyNodes, "largest study graph exceeds 80 nodes");
  if (o.pass) {
    o.detail = "nodes " + std::to_string(nodes) + " < edges " + std::to_string(edges) + ", max study nodes " +
               std::to_string(*r.max_study_nodes);
  }
  return o;
}

Outcome small_instance_oracles() {
  Outcome o;
  std::size_t graphs = 0;
  for (int n = 2; n <= kExhaustiveMaxNodes && o.pass; ++n) {
    const testing::EdgeList pairs = testing::ordered_pairs(n);
    const std::uint64_t subsets = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 0; mask < subsets && o.pass; ++mask) {
      testing::EdgeList edges;
      std::vector<std::uint32_t> reach(static_cast<std::size_t>(n), 0);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (mask >> k & 1) {
          edges.push_back(pairs[k]);
          reach[static_cast<std::size_t>(pairs[k].first)] |= 1u << pairs[k].second;
        }
      }
      // Transitive closure: a cycle exists iff some node reaches itself.
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          if (reach[static_cast<std::size_t>(i)] >> k & 1) reach[static_cast<std::size_t>(i)] |= reach[static_cast<std::size_t>(k)];
        }
      }
      bool cyclic = false;
      for (int i = 0; i < n; ++i) cyclic |= (reach[static_cast<std::size_t>(i)] >> i & 1) != 0;
      const bool tree = !cyclic && edges.size() == static_cast<std::size_t>(n - 1) &&
                        testing::connected_by_union_find(n, edges);
      const GraphMetrics m = compute_metrics(testing::build_graph(n, edges, true));
      ++graphs;
      o.require((m.detected_types.count(GraphTypeTag::dag) == 1) == !cyclic,
                "dag detection wrong on n=" + std::to_string(n) + " mask " + std::to_string(mask));
      o.require((m.detected_types.count(GraphTypeTag::tree) == 1) == tree,
                "tree detection wrong on n=" + std::to_string(n) + " mask " + std::to_string(mask));
    }
  }

  Rng rng(5150);
  for (int trial = 0; trial < kOrthogonalDags && o.pass; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(19));
    const Graph g = testing::build_graph(n, testing::random_dag(rng, n, 0.25), true);
    const OrthogonalLayout layout = layout_orthogonal(g, Canvas{});
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (int r : layout.row) {
      if (r >= 0 && r < n) ++seen[static_cast<std::size_t>(r)];
    }
    o.require(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }),
              "rows are not a permutation on DAG " + std::to_string(trial));
    for (const Edge& e : g.edges()) {
      o.require(layout.row[e.source] < layout.row[e.target], "edge points upward on DAG " + std::to_string(trial));
    }
  }
  if (o.pass) {
    o.detail = std::to_string(graphs) + " directed graphs on 2-" + std::to_string(kExhaustiveMaxNodes) +
               " nodes, " + std::to_string(kOrthogonalDags) + " random DAGs topologically ordered";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"use-case part 1", use_case_part1},
      {"use-case part 2", use_case_part2},
      {"combination suite", combination_suite},
      {"suitability truth table", suitability_truth_table},
      {"graphml round trip", graphml_round_trip},
      {"rendering properties", rendering_properties},
      {"analytics", analytics_report},
      {"small-instance oracles", small_instance_oracles},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = check();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << fmt(seconds, 2) << " s): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
