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

#ifndef LANEGRAPH_GRAPH_REFERENCE_SOLVERS_HPP_
#define LANEGRAPH_GRAPH_REFERENCE_SOLVERS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lanegraph/graph/columnar_graph.hpp"
#include "lanegraph/graph/dp_solver.hpp"

namespace lanegraph::graph {

// General-purpose solvers used to validate and benchmark solve_dp. None of
// them apply the lateral regulariser except solve_bruteforce.

inline std::size_t node_index(const ColumnarGraph& g, Node n) {
  return static_cast<std::size_t>(n.v - 1) * static_cast<std::size_t>(g.width()) +
         static_cast<std::size_t>(n.u - 1);
}

// Binary-heap Dijkstra from a virtual source tied at zero cost to every
// bottom-row node. Returns the distance to every node, indexed by node_index.
struct DijkstraResult {
  std::vector<double> distance;
  std::vector<std::int32_t> predecessor;  // node index, -1 for bottom-row nodes
  std::size_t peak_heap_size = 0;
};
DijkstraResult dijkstra_all(const ColumnarGraph& graph);

// Minimum-cost path to one destination; stops as soon as it is settled.
Path solve_dijkstra(const ColumnarGraph& graph, Node dest);

// All-pairs distances, indexed [node_index(from) * N + node_index(to)],
// +inf when `to` is unreachable from `from`. Throws kSizeGuard when the node
// count exceeds `max_nodes`.
inline constexpr std::size_t kFloydWarshallMaxNodes = 64 * 64;
std::vector<double> solve_floyd_warshall(const ColumnarGraph& graph,
                                         std::size_t max_nodes = kFloydWarshallMaxNodes);

// Minimum over bottom-row sources of the all-pairs table, for one destination.
double floyd_warshall_cost_to(const ColumnarGraph& graph, const std::vector<double>& all_pairs,
                              Node dest);

// Exhaustive enumeration of every feasible path ending at `dest`. Among
// equal-cost paths the one chosen by the DP tie-break is returned. Throws
// kBruteForceCap if more than `max_paths` paths exist.
inline constexpr double kBruteForceMaxPaths = 1e6;
Path solve_bruteforce(const ColumnarGraph& graph, Node dest, double lambda = 0.0,
                      double max_paths = kBruteForceMaxPaths);

// Number of feasible bottom-to-dest paths (as a double; may be huge).
double count_paths(const ColumnarGraph& graph, Node dest);

}  // namespace lanegraph::graph

#endif  // LANEGRAPH_GRAPH_REFERENCE_SOLVERS_HPP_
