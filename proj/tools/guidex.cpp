#include <CLI11.hpp>

#include <algorithm>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>

#include "guidex/combination.hpp"
#include "guidex/examples.hpp"
#include "guidex/generate.hpp"
#include "guidex/graphml.hpp"
#include "guidex/json_io.hpp"
#include "guidex/registry.hpp"
#include "guidex/render.hpp"
#include "guidex/service.hpp"
#include "guidex/suitability.hpp"

namespace {

using namespace guidex;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kRefused = 3 };

class UsageError : public Error {
 public:
  using Error::Error;
};

std::unique_ptr<Registry> load_registry(const std::string& path, bool create_if_missing = false) {
  if (path.empty()) return std::make_unique<Registry>(seed_records());
  if (create_if_missing && !std::filesystem::exists(path)) {
    auto registry = std::make_unique<Registry>(seed_records(), std::filesystem::path(path));
    registry->save(path);
    return registry;
  }
  return Registry::open(path);
}

Graph load_graph(const std::string& path) {
  GraphmlReadResult result = parse_graphml(read_file(path));
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  return std::move(result.graph);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

std::string resolve(const Registry& registry, const std::string& query) {
  try {
    return registry.resolve_id(query);
  } catch (const NotFound& e) {
    throw UsageError(e.what());
  }
}

const char* marker(CriterionStatus s) {
  switch (s) {
    case CriterionStatus::match: return "✓";
    case CriterionStatus::mismatch:
    case CriterionStatus::no_match: return "✗";
    case CriterionStatus::moot: return "-";
  }
  return "?";
}

std::string types_string(const GraphTypeSet& types) {
  std::string out;
  for (GraphTypeTag t : types) out += (out.empty() ? "" : " ") + std::string(to_string(t));
  return out;
}

void print_metrics(const GraphMetrics& m) {
  std::cout << "nodes:     " << m.node_count << "\n"
            << "edges:     " << m.edge_count << "\n"
            << "density:   " << std::fixed << std::setprecision(4) << m.density << "\n"
            << "types:     " << types_string(m.detected_types) << "\n"
            << "timesteps: " << m.timestep_count << "\n"
            << "clusters:  " << (m.cluster_count ? std::to_string(*m.cluster_count) : "-") << "\n";
}

void print_match_table(const Registry& registry, const GraphMetrics& metrics) {
  auto rows = assess_all(registry.records(), metrics);
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::make_pair(rank(a.second.summary), a.first) < std::make_pair(rank(b.second.summary), b.first);
  });
  std::size_t width = 9;
  for (const auto& [id, _] : rows) width = std::max(width, id.size());
  std::cout << std::left << std::setw(static_cast<int>(width) + 2) << "guideline"
            << "GT  #N  #D  summary\n";
  for (const auto& [id, a] : rows) {
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << id << marker(a.gt) << "   " << marker(a.n)
              << "   " << marker(a.d) << "   " << to_string(a.summary) << "\n";
  }
}

void print_analytics(const AnalyticsReport& r) {
  std::cout << "guidelines: " << r.guideline_count << "\n\nper category:\n";
  for (const auto& [k, v] : r.per_category) std::cout << "  " << k << ": " << v << "\n";
  std::cout << "\nper graph type:\n";
  for (const auto& [k, v] : r.per_graph_type) std::cout << "  " << k << ": " << v << "\n";
  std::cout << "\ntasks:\n";
  for (const auto& [k, v] : r.task_histogram) std::cout << "  " << k << ": " << v << "\n";
  std::cout << "\nlargest study graph: "
            << (r.max_study_nodes ? std::to_string(*r.max_study_nodes) + " nodes" : std::string("unknown")) << "\n";
}

HttpFrontend* g_frontend = nullptr;

void on_signal(int) {
  if (g_frontend) g_frontend->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guideline exploration for graph visualization design"};
  app.require_subcommand(1);

  GenerationSpec spec;
  std::string output;
  auto* generate = app.add_subcommand("generate", "Write a generated graph as GraphML");
  generate->add_option("-n,--nodes", spec.node_count, "Number of nodes")->default_val(50);
  generate->add_option("-c,--clusters", spec.cluster_count, "Number of clusters")->default_val(1);
  generate->add_option("-t,--timesteps", spec.timestep_count, "Number of time slices")->default_val(1);
  generate->add_option("-m,--attach", spec.attachment_edges, "Edges per attaching node")->default_val(1);
  generate->add_flag("--directed", spec.directed, "Generate a directed graph");
  generate->add_option("--seed", spec.seed, "Random seed")->default_val(0);
  generate->add_option("-o,--output", output, "Output file (default stdout)");

  std::string example_kind;
  auto* example = app.add_subcommand("example", "Write one of the bundled example graphs as GraphML");
  example->add_option("kind", example_kind, "directed, undirected, dag, tree, flow_graph or trajectory")->required();
  example->add_option("-o,--output", output, "Output file (default stdout)");

  std::string graph_file;
  bool as_json = false;
  auto* metrics = app.add_subcommand("metrics", "Report node count, edge count, density and graph types");
  metrics->add_option("graph", graph_file, "GraphML file")->required()->check(CLI::ExistingFile);
  metrics->add_flag("--json", as_json, "Print JSON");

  std::string registry_file;
  auto registry_option = [&](CLI::App* sub) {
    sub->add_option("--registry", registry_file, "Registry file (default: built-in corpus)")
        ->envname("GUIDEX_REGISTRY");
  };

  auto* match = app.add_subcommand("match", "Rank the guidelines by suitability for a graph");
  match->add_option("graph", graph_file, "GraphML file")->required()->check(CLI::ExistingFile);
  match->add_flag("--json", as_json, "Print JSON");
  registry_option(match);

  std::string guideline;
  std::vector<std::string> combine;
  std::uint64_t seed = 1;
  auto* render_cmd = app.add_subcommand("render", "Render a graph with guidelines applied as SVG");
  render_cmd->add_option("graph", graph_file, "GraphML file")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("-g,--guideline", guideline, "Main guideline id or unique prefix");
  render_cmd->add_option("--combine", combine, "Guideline to combine with the main one (repeatable)");
  render_cmd->add_option("-o,--output", output, "Output SVG file (default stdout)");
  render_cmd->add_option("--seed", seed, "Layout seed")->default_val(1);
  registry_option(render_cmd);

  auto* analytics = app.add_subcommand("analytics", "Summarize the guideline corpus");
  analytics->add_flag("--json", as_json, "Print JSON");
  registry_option(analytics);

  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t sessions = 64;
  auto* serve = app.add_subcommand("serve", "Start the HTTP service");
  serve->add_option("--host", host, "Interface to bind")->default_val("127.0.0.1");
  serve->add_option("--port", port, "Port (0 picks a free one)")->default_val(8080);
  serve->add_option("--sessions", sessions, "Session graph capacity")->default_val(64);
  registry_option(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (generate->parsed()) {
      write_output(output, write_graphml(generate_graph(spec)));
    } else if (example->parsed()) {
      GraphTypeTag kind;
      try {
        kind = graph_type_from_string(example_kind);
      } catch (const ValidationError& e) {
        throw UsageError(e.what());
      }
      write_output(output, write_graphml(example_graph(kind)));
    } else if (metrics->parsed()) {
      const GraphMetrics m = compute_metrics(load_graph(graph_file));
      if (as_json) {
        std::cout << to_json(m).dump(2) << "\n";
      } else {
        print_metrics(m);
      }
    } else if (match->parsed()) {
      const auto registry = load_registry(registry_file);
      const GraphMetrics m = compute_metrics(load_graph(graph_file));
      if (as_json) {
        Json rows = Json::array();
        for (const auto& [id, a] : assess_all(registry->records(), m)) {
          rows.push_back(Json{{"id", id}, {"assessment", to_json(a)}});
        }
        std::cout << rows.dump(2) << "\n";
      } else {
        print_match_table(*registry, m);
      }
    } else if (render_cmd->parsed()) {
      const auto registry = load_registry(registry_file);
      const Graph g = load_graph(graph_file);
      RenderPlan plan = base_plan();
      if (!guideline.empty()) {
        const GraphMetrics m = compute_metrics(g);
        const std::string main = resolve(*registry, guideline);
        std::vector<std::string> ids;
        for (const auto& c : combine) ids.push_back(resolve(*registry, c));
        const SuitabilityAssessment a = assess(registry->details(main), m);
        plan = compose(*registry, main, ids, m);
        if (a.summary != Summary::well_suited) {
          std::cerr << "warning: suitability: " << to_string(a.summary) << " (GT " << marker(a.gt) << " #N "
                    << marker(a.n) << " #D " << marker(a.d) << ")\n";
        }
      } else if (!combine.empty()) {
        throw UsageError("--combine needs --guideline");
      }
      RenderOptions options;
      options.seed = seed;
      const Scene scene = render(g, plan, options);
      for (const auto& id : scene.unimplemented) {
        std::cerr << "warning: " << id << " has no visual mapping; the base graph is shown\n";
      }
      write_output(output, scene_to_svg(scene));
    } else if (analytics->parsed()) {
      const auto registry = load_registry(registry_file);
      if (as_json) {
        std::cout << to_json(registry->analytics()).dump(2) << "\n";
      } else {
        print_analytics(registry->analytics());
      }
    } else if (serve->parsed()) {
      const auto registry = load_registry(registry_file, true);
      Service service(*registry, sessions);
      HttpFrontend frontend(service);
      const int bound = frontend.bind(host, port);
      g_frontend = &frontend;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on http://" << host << ":" << bound << std::endl;
      frontend.listen();
      g_frontend = nullptr;
    }
  } catch (const CombinationRejected& e) {
    std::cerr << "error: combination rejected\n";
    for (const Violation& v : e.violations()) std::cerr << "  " << to_string(v.rule) << ": " << v.message << "\n";
    return kRefused;
  } catch (const SlotConflict& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRefused;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kOk;
}
