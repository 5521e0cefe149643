#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "guidex/combination.hpp"
#include "guidex/examples.hpp"
#include "guidex/graphml.hpp"
#include "guidex/registry.hpp"

namespace {

using namespace guidex;
namespace fs = std::filesystem;

void write(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
}

std::string types_string(const GraphTypeSet& types) {
  std::string out;
  for (GraphTypeTag t : types) out += (out.empty() ? "" : ", ") + std::string(to_string(t));
  return out.empty() ? "-" : out;
}

/// Outcome of composing `main` with `other` on a graph: "ok" or the rules
/// and conflicts that block it.
std::string outcome(const Registry& registry, const std::string& main, const std::string& other,
                    const GraphMetrics& metrics) {
  const std::vector<std::string> combined{other};
  try {
    compose(registry, main, combined, metrics);
    return "ok";
  } catch (const CombinationRejected& e) {
    std::set<std::string> rules;
    for (const Violation& v : e.violations()) rules.insert(std::string(to_string(v.rule)));
    std::string out;
    for (const auto& r : rules) out += (out.empty() ? "" : " ") + r;
    return out;
  } catch (const SlotConflict&) {
    return "slot";
  }
}

void table(std::ostringstream& md, const Registry& registry, const std::string& title, const Graph& graph) {
  const GraphMetrics metrics = compute_metrics(graph);
  md << "## " << title << "\n\n"
     << metrics.node_count << " nodes, " << metrics.edge_count << " edges, detected types: "
     << types_string(metrics.detected_types) << ".\n\n";
  const auto& records = registry.records();
  md << "| main \\ combined |";
  for (std::size_t j = 0; j < records.size(); ++j) md << " " << j + 1 << " |";
  md << "\n|---|";
  for (std::size_t j = 0; j < records.size(); ++j) md << "---|";
  md << "\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    md << "| " << i + 1 << " " << records[i].id << " |";
    for (std::size_t j = 0; j < records.size(); ++j) {
      md << " " << (i == j ? "" : outcome(registry, records[i].id, records[j].id, metrics)) << " |";
    }
    md << "\n";
  }
  md << "\n";
}

std::string combinations_markdown(const Registry& registry) {
  std::ostringstream md;
  md << "# Pairwise combinations\n\n"
     << "Each cell composes the row guideline as main with the column guideline as the only combined one.\n"
     << "`ok` is a valid plan. `R1` to `R4` name the violated rules. `slot` is a slot conflict or an\n"
     << "unimplemented pairing. Generated by `make_data`; do not edit by hand.\n\n";
  md << "| # | id | category | vis type | graph types |\n|---|---|---|---|---|\n";
  const auto& records = registry.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    md << "| " << i + 1 << " | " << r.id << " | " << r.category() << " | " << to_string(r.vis_type) << " | "
       << types_string(r.graph_types) << " |\n";
  }
  md << "\n";
  table(md, registry, "Sparse use-case graph", use_case_graph(UseCase::sparse));
  table(md, registry, "Dense use-case graph", use_case_graph(UseCase::dense));
  table(md, registry, "Undirected example", example_graph(GraphTypeTag::undirected));
  table(md, registry, "Tree example", example_graph(GraphTypeTag::tree));
  return md.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate the bundled data files and the combination table"};
  std::string data_dir;
  std::string docs_dir;
  app.add_option("--data", data_dir, "Directory for guidelines.json and the use-case graphs");
  app.add_option("--docs", docs_dir, "Directory for combinations.md");
  CLI11_PARSE(app, argc, argv);
  try {
    const Registry registry = Registry::seeded();
    if (!data_dir.empty()) {
      fs::create_directories(data_dir);
      registry.save(fs::path(data_dir) / "guidelines.json");
      write(fs::path(data_dir) / "use_case_sparse.graphml", write_graphml(use_case_graph(UseCase::sparse)));
      write(fs::path(data_dir) / "use_case_dense.graphml", write_graphml(use_case_graph(UseCase::dense)));
    }
    if (!docs_dir.empty()) write(fs::path(docs_dir) / "combinations.md", combinations_markdown(registry));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
