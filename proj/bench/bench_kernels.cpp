#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#include "guidex/generate.hpp"
#include "guidex/kernels.hpp"

namespace {

using namespace guidex;
using Clock = std::chrono::steady_clock;

template <typename F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  return best;
}

struct Instance {
  Graph graph;
  std::vector<Point> pos;
  std::vector<int> group;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<kernels::Segment> segments;
};

Instance make_instance(int n, int attach, std::uint64_t seed) {
  GenerationSpec spec;
  spec.node_count = n;
  spec.attachment_edges = attach;
  spec.cluster_count = std::max(1, n / 50);
  spec.seed = seed;
  Instance in{generate_graph(spec), {}, {}, {}, {}};
  Rng rng(seed + 1);
  for (const Node& v : in.graph.nodes()) {
    in.pos.push_back(Point{rng.uniform(0.0, 1000.0), rng.uniform(0.0, 800.0)});
    in.group.push_back(v.cluster.value_or(-1));
  }
  for (const Edge& e : in.graph.edges()) {
    in.edges.emplace_back(e.source, e.target);
    in.segments.push_back({in.pos[e.source], in.pos[e.target], e.source, e.target});
  }
  return in;
}

double max_abs_diff(const std::vector<Point>& a, const std::vector<Point>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max({d, std::abs(a[i].x - b[i].x), std::abs(a[i].y - b[i].y)});
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time the parallel force and crossing kernels against their serial references"};
  std::vector<int> sizes{250, 1000, 4000};
  int attach = 2;
  int reps = 5;
  std::vector<int> threads;
  app.add_option("-n,--nodes", sizes, "Node counts")->expected(1, -1);
  app.add_option("-m,--attach", attach, "Edges per attaching node");
  app.add_option("-r,--reps", reps, "Repetitions; the best time is reported");
  app.add_option("-t,--threads", threads, "Thread counts (default: 1 and the maximum)")->expected(1, -1);
  CLI11_PARSE(app, argc, argv);
  if (threads.empty()) threads = {1, omp_get_max_threads()};
  std::sort(threads.begin(), threads.end());
  threads.erase(std::unique(threads.begin(), threads.end()), threads.end());

  std::printf("%-9s %7s %8s %8s %12s %12s %8s %10s\n", "kernel", "nodes", "edges", "threads", "serial_ms",
              "parallel_ms", "speedup", "agree");
  for (int n : sizes) {
    const Instance in = make_instance(n, attach, 1);
    const Adjacency adj = undirected_adjacency(in.graph);
    const kernels::ForceModel model{30.0, 0.5};
    std::vector<Point> serial_disp(in.pos.size());
    std::vector<Point> parallel_disp(in.pos.size());
    const double serial_forces = best_ms(reps, [&] {
      kernels::accumulate_forces_serial(in.pos, in.edges, in.group, model, serial_disp);
    });
    kernels::CrossingStats serial_cross;
    const double serial_crossings = best_ms(reps, [&] { serial_cross = kernels::count_crossings_serial(in.segments); });
    for (int t : threads) {
      omp_set_num_threads(t);
      const double par_forces =
          best_ms(reps, [&] { kernels::accumulate_forces(in.pos, adj, in.group, model, parallel_disp); });
      double scale = 0.0;
      for (const Point& p : serial_disp) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
      const bool forces_agree = max_abs_diff(serial_disp, parallel_disp) <= 1e-9 * std::max(1.0, scale);
      std::printf("%-9s %7d %8zu %8d %12.3f %12.3f %8.2f %10s\n", "forces", n, in.edges.size(), t, serial_forces,
                  par_forces, serial_forces / par_forces, forces_agree ? "yes" : "NO");
      kernels::CrossingStats par_cross;
      const double par_crossings = best_ms(reps, [&] { par_cross = kernels::count_crossings(in.segments); });
      const bool cross_agree =
          par_cross.crossings == serial_cross.crossings && par_cross.min_angle == serial_cross.min_angle;
      std::printf("%-9s %7d %8zu %8d %12.3f %12.3f %8.2f %10s\n", "crossings", n, in.edges.size(), t,
                  serial_crossings, par_crossings, serial_crossings / par_crossings, cross_agree ? "yes" : "NO");
      if (!forces_agree || !cross_agree) return 1;
    }
  }
  return 0;
}
