// Copyright 2026 The lanegraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lanegraph/graph/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>

#include "lanegraph/error.hpp"

namespace lanegraph::graph {
namespace {

using Clock = std::chrono::steady_clock;

Grid<double> random_costs(int width, int height, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Grid<double> grid(width, height);
  for (double& c : grid.cells()) c = dist(rng);
  return grid;
}

// Mean wall time of `fn` over enough runs to fill `min_time`.
template <typename Fn>
std::int64_t time_mean_ns(Fn&& fn, std::chrono::nanoseconds min_time) {
  std::int64_t runs = 0;
  const auto start = Clock::now();
  auto elapsed = Clock::duration::zero();
  do {
    fn();
    ++runs;
    elapsed = Clock::now() - start;
  } while (elapsed < min_time);
  return std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count() / runs;
}

volatile double g_sink = 0.0;

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kDimensionTooSmall, "slope fit needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<std::pair<double, double>> median_times(const BenchmarkReport& report,
                                                    const std::string& solver) {
  std::map<std::size_t, std::vector<double>> by_size;
  for (const auto& row : report.rows) {
    if (row.solver == solver) by_size[row.nodes].push_back(static_cast<double>(row.time_ns));
  }
  std::vector<std::pair<double, double>> out;
  for (auto& [nodes, times] : by_size) {
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    const double median =
        times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
    out.emplace_back(static_cast<double>(nodes), median);
  }
  return out;
}

BenchmarkReport benchmark_solvers(const BenchmarkOptions& options) {
  if (options.sizes.empty()) {
    throw Error(ErrorCode::kDimensionTooSmall, "benchmark needs at least one size");
  }
  std::mt19937_64 rng(options.seed);
  std::vector<BenchmarkRow> dp_rows, dijkstra_rows, fw_rows;
  BenchmarkReport report;

  for (const auto& [width, height] : options.sizes) {
    const ColumnarGraph graph = build_graph(random_costs(width, height, rng), options.radius);
    const std::size_t nodes = graph.node_count();
    const std::size_t edges = graph.edge_count();
    for (int rep = 0; rep < options.repetitions; ++rep) {
      BenchmarkRow dp{"dp", nodes, edges, options.radius, options.lambda, 0,
                      nodes * (sizeof(double) + sizeof(int))};
      dp.time_ns = time_mean_ns(
          [&] {
            const PathTable table = solve_dp(graph, options.lambda);
            g_sink = table.costs().cells().back();
          },
          options.min_sample_time);
      dp_rows.push_back(dp);

      std::size_t peak_heap = 0;
      BenchmarkRow dj{"dijkstra", nodes, edges, options.radius, 0.0, 0, 0};
      dj.time_ns = time_mean_ns(
          [&] {
            const DijkstraResult result = dijkstra_all(graph);
            peak_heap = result.peak_heap_size;
            g_sink = result.distance.back();
          },
          options.min_sample_time);
      dj.mem_bytes = nodes * (sizeof(double) + sizeof(std::int32_t) + sizeof(char)) +
                     peak_heap * sizeof(std::pair<double, std::size_t>);
      dijkstra_rows.push_back(dj);
    }

    if (nodes > options.floyd_warshall_max_nodes) {
      report.notes.push_back("floyd_warshall skipped at " + std::to_string(width) + "x" +
                             std::to_string(height) + " (" + std::to_string(nodes) +
                             " nodes > guard " +
                             std::to_string(options.floyd_warshall_max_nodes) + ")");
      continue;
    }
    for (int rep = 0; rep < options.repetitions; ++rep) {
      BenchmarkRow fw{"floyd_warshall", nodes, edges, options.radius, 0.0, 0,
                      nodes * nodes * sizeof(double)};
      fw.time_ns = time_mean_ns(
          [&] {
            const auto all = solve_floyd_warshall(graph, options.floyd_warshall_max_nodes);
            g_sink = all.back();
          },
          options.min_sample_time);
      fw_rows.push_back(fw);
    }
  }

  for (auto* rows : {&dp_rows, &dijkstra_rows, &fw_rows}) {
    report.rows.insert(report.rows.end(), rows->begin(), rows->end());
  }

  const auto dp_medians = median_times(report, "dp");
  if (dp_medians.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& [n, t] : dp_medians) {
      x.push_back(n);
      y.push_back(t);
    }
    report.dp_slope = loglog_slope(x, y);
    report.dp_linear =
        report.dp_slope >= kLinearSlopeMin && report.dp_slope <= kLinearSlopeMax;
  } else {
    report.notes.push_back("dp scaling slope needs at least two sizes");
  }
  return report;
}

void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report) {
  out << "solver,nodes,edges,k,lambda,time_ns,mem_bytes\n";
  for (const auto& row : report.rows) {
    out << row.solver << ',' << row.nodes << ',' << row.edges << ',' << row.radius << ','
        << row.lambda << ',' << row.time_ns << ',' << row.mem_bytes << '\n';
  }
}

}  // namespace lanegraph::graph
