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

#ifndef LANEGRAPH_GRAPH_BENCHMARK_HPP_
#define LANEGRAPH_GRAPH_BENCHMARK_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lanegraph/graph/reference_solvers.hpp"

namespace lanegraph::graph {

struct BenchmarkOptions {
  std::vector<std::pair<int, int>> sizes;  // (U, V)
  int radius = 3;
  double lambda = 0.0;
  int repetitions = 3;
  std::size_t floyd_warshall_max_nodes = kFloydWarshallMaxNodes;
  std::uint64_t seed = 1;
  // Each repetition re-runs the solver until at least this much time has
  // elapsed and reports the mean, so tiny graphs are not timer-bound.
  std::chrono::nanoseconds min_sample_time = std::chrono::milliseconds(20);
};

struct BenchmarkRow {
  std::string solver;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  int radius = 0;
  double lambda = 0.0;
  std::int64_t time_ns = 0;
  std::size_t mem_bytes = 0;
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;
  std::vector<std::string> notes;  // e.g. sizes skipped by a guard
  double dp_slope = 0.0;           // log-log slope of DP time vs node count
  bool dp_linear = false;          // dp_slope in [kLinearSlopeMin, kLinearSlopeMax]
};

inline constexpr double kLinearSlopeMin = 0.8;
inline constexpr double kLinearSlopeMax = 1.3;

// Times DP, Dijkstra and Floyd-Warshall on random-cost graphs of each size.
// Rows are grouped by solver, then ordered by size and repetition.
BenchmarkReport benchmark_solvers(const BenchmarkOptions& options);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Median time per node count for one solver, sorted by node count.
std::vector<std::pair<double, double>> median_times(const BenchmarkReport& report,
                                                    const std::string& solver);

// Header: solver,nodes,edges,k,lambda,time_ns,mem_bytes
void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report);

}  // namespace lanegraph::graph

#endif  // LANEGRAPH_GRAPH_BENCHMARK_HPP_
