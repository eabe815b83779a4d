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

#include "lanegraph/graph/reference_solvers.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>
#include <utility>

#include "lanegraph/error.hpp"

namespace lanegraph::graph {
namespace {

void require_node(const ColumnarGraph& g, Node n) {
  if (!g.contains(n)) {
    throw Error(ErrorCode::kOutOfRange, "node (" + std::to_string(n.u) + "," +
                                            std::to_string(n.v) + ") outside the graph");
  }
}

Node node_at(const ColumnarGraph& g, std::size_t index) {
  const auto w = static_cast<std::size_t>(g.width());
  return {static_cast<int>(index % w) + 1, static_cast<int>(index / w) + 1};
}

// Runs Dijkstra; stops early once `stop_at` (if any) is settled.
DijkstraResult run_dijkstra(const ColumnarGraph& g, std::size_t stop_at) {
  const std::size_t n = g.node_count();
  const int width = g.width();
  const int radius = g.radius();
  DijkstraResult result;
  result.distance.assign(n, kUnreached);
  result.predecessor.assign(n, -1);
  std::vector<char> settled(n, 0);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  // Virtual source: every bottom-row node starts at distance zero.
  for (int c = 0; c < width; ++c) {
    result.distance[static_cast<std::size_t>(c)] = 0.0;
    heap.emplace(0.0, static_cast<std::size_t>(c));
  }
  result.peak_heap_size = heap.size();

  while (!heap.empty()) {
    const auto [dist, idx] = heap.top();
    heap.pop();
    if (settled[idx]) continue;
    settled[idx] = 1;
    if (idx == stop_at) break;
    const int row = static_cast<int>(idx / static_cast<std::size_t>(width));
    const int col = static_cast<int>(idx % static_cast<std::size_t>(width));
    if (row + 1 >= g.height()) continue;
    const int lo = std::max(0, col - radius);
    const int hi = std::min(width - 1, col + radius);
    for (int to = lo; to <= hi; ++to) {
      const std::size_t next = static_cast<std::size_t>(row + 1) * width + to;
      if (settled[next]) continue;
      const double candidate = dist + g.incoming_cost(to, row + 1, to - col);
      if (candidate < result.distance[next]) {
        result.distance[next] = candidate;
        result.predecessor[next] = static_cast<std::int32_t>(idx);
        heap.emplace(candidate, next);
      }
    }
    result.peak_heap_size = std::max(result.peak_heap_size, heap.size());
  }
  return result;
}

}  // namespace

DijkstraResult dijkstra_all(const ColumnarGraph& graph) {
  return run_dijkstra(graph, graph.node_count());
}

Path solve_dijkstra(const ColumnarGraph& graph, Node dest) {
  require_node(graph, dest);
  const std::size_t target = node_index(graph, dest);
  const DijkstraResult result = run_dijkstra(graph, target);
  Path path;
  path.cost = result.distance[target];
  for (std::int64_t at = static_cast<std::int64_t>(target); at >= 0;
       at = result.predecessor[static_cast<std::size_t>(at)]) {
    path.nodes.push_back(node_at(graph, static_cast<std::size_t>(at)));
  }
  std::reverse(path.nodes.begin(), path.nodes.end());
  return path;
}

std::vector<double> solve_floyd_warshall(const ColumnarGraph& graph, std::size_t max_nodes) {
  const std::size_t n = graph.node_count();
  if (n > max_nodes) {
    throw Error(ErrorCode::kSizeGuard, "Floyd-Warshall limited to " + std::to_string(max_nodes) +
                                           " nodes, graph has " + std::to_string(n));
  }
  std::vector<double> dist(n * n, kUnreached);
  for (std::size_t i = 0; i < n; ++i) dist[i * n + i] = 0.0;
  const int width = graph.width();
  for (int r = 0; r + 1 < graph.height(); ++r) {
    for (int c = 0; c < width; ++c) {
      const int lo = std::max(0, c - graph.radius());
      const int hi = std::min(width - 1, c + graph.radius());
      const std::size_t from = static_cast<std::size_t>(r) * width + c;
      for (int to = lo; to <= hi; ++to) {
        dist[from * n + static_cast<std::size_t>(r + 1) * width + to] =
            graph.incoming_cost(to, r + 1, to - c);
      }
    }
  }
  // Node indices are row-major, so every edge goes from a lower index to a
  // higher one: dist[i][k] is finite only for i <= k and dist[k][j] only for
  // j >= k. The loops skip those structurally infinite entries.
  for (std::size_t k = 0; k < n; ++k) {
    const double* row_k = dist.data() + k * n;
    for (std::size_t i = 0; i <= k; ++i) {
      const double via = dist[i * n + k];
      if (via == kUnreached) continue;
      double* row_i = dist.data() + i * n;
      for (std::size_t j = k; j < n; ++j) {
        const double candidate = via + row_k[j];
        if (candidate < row_i[j]) row_i[j] = candidate;
      }
    }
  }
  return dist;
}

double floyd_warshall_cost_to(const ColumnarGraph& graph, const std::vector<double>& all_pairs,
                              Node dest) {
  require_node(graph, dest);
  const std::size_t n = graph.node_count();
  const std::size_t to = node_index(graph, dest);
  double best = kUnreached;
  for (int c = 0; c < graph.width(); ++c) {
    best = std::min(best, all_pairs[static_cast<std::size_t>(c) * n + to]);
  }
  return best;
}

double count_paths(const ColumnarGraph& graph, Node dest) {
  require_node(graph, dest);
  const int width = graph.width();
  std::vector<double> counts(static_cast<std::size_t>(width), 0.0);
  counts[static_cast<std::size_t>(dest.u - 1)] = 1.0;
  // Walk downward from dest, counting ways to reach each column.
  for (int v = dest.v; v > 1; --v) {
    std::vector<double> below(static_cast<std::size_t>(width), 0.0);
    for (int c = 0; c < width; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0.0) continue;
      const int lo = std::max(0, c - graph.radius());
      const int hi = std::min(width - 1, c + graph.radius());
      for (int s = lo; s <= hi; ++s) below[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(c)];
    }
    counts = std::move(below);
  }
  double total = 0.0;
  for (double c : counts) total += c;
  return total;
}

Path solve_bruteforce(const ColumnarGraph& graph, Node dest, double lambda, double max_paths) {
  require_node(graph, dest);
  const double total = count_paths(graph, dest);
  if (total > max_paths) {
    throw Error(ErrorCode::kBruteForceCap,
                "brute force would enumerate " + std::to_string(total) + " paths (cap " +
                    std::to_string(max_paths) + ")");
  }
  const std::vector<int> order = offset_order(graph.radius());
  std::vector<Node> stack(static_cast<std::size_t>(dest.v));
  Path best;
  best.cost = kUnreached;

  // Depth-first from the destination downward, offsets in tie-break order;
  // the first strictly cheapest path found is the tie-break winner.
  std::function<void(Node, double)> descend = [&](Node at, double cost) {
    stack[static_cast<std::size_t>(at.v - 1)] = at;
    if (at.v == 1) {
      if (cost < best.cost) {
        best.cost = cost;
        best.nodes.assign(stack.begin(), stack.end());
      }
      return;
    }
    for (int j : order) {
      const Node from{at.u - j, at.v - 1};
      if (from.u < 1 || from.u > graph.width()) continue;
      descend(from, cost + graph.edge_cost(from, at) + lambda * j * j);
    }
  };
  descend(dest, 0.0);
  return best;
}

}  // namespace lanegraph::graph
