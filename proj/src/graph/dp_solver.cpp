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

#include "lanegraph/graph/dp_solver.hpp"

#include <string>

#include "lanegraph/error.hpp"

namespace lanegraph::graph {

std::vector<double> PathTable::top_row_costs() const {
  auto top = costs_.row(height() - 1);
  return {top.begin(), top.end()};
}

std::vector<int> offset_order(int radius) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(2 * radius + 1));
  order.push_back(0);
  for (int m = 1; m <= radius; ++m) {
    order.push_back(-m);
    order.push_back(m);
  }
  return order;
}

PathTable solve_dp(const ColumnarGraph& graph, double lambda) {
  const int width = graph.width();
  const int height = graph.height();
  const int radius = graph.radius();
  PathTable table(width, height);
  auto& costs = table.costs();
  auto& parents = table.parents();
  for (int c = 0; c < width; ++c) costs.at(c, 0) = 0.0;

  const std::vector<int> order = offset_order(radius);
  std::vector<double> penalty(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    penalty[i] = lambda * static_cast<double>(order[i]) * static_cast<double>(order[i]);
  }

  for (int r = 1; r < height; ++r) {
    auto prev = costs.row(r - 1);
    auto cur = costs.row(r);
    auto back = parents.row(r);
    for (int c = 0; c < width; ++c) {
      double best = kUnreached;
      int best_src = -1;
      for (std::size_t i = 0; i < order.size(); ++i) {
        const int j = order[i];
        const int src = c - j;
        if (src < 0 || src >= width) continue;
        const double candidate = prev[src] + graph.incoming_cost(c, r, j) + penalty[i];
        if (candidate < best) {
          best = candidate;
          best_src = src;
        }
      }
      cur[c] = best;
      back[c] = best_src + 1;
    }
  }
  return table;
}

PathTable solve_dp_unregularized(const ColumnarGraph& graph) {
  const int width = graph.width();
  const int height = graph.height();
  PathTable table(width, height);
  for (int u = 1; u <= width; ++u) table.costs().at(u - 1, 0) = 0.0;

  const std::vector<int> order = offset_order(graph.radius());
  for (int v = 2; v <= height; ++v) {
    for (int u = 1; u <= width; ++u) {
      double& e = table.costs().at(u - 1, v - 1);
      for (int j : order) {
        const Node from{u - j, v - 1};
        if (from.u < 1 || from.u > width) continue;
        const double candidate =
            table.costs().at(from.u - 1, from.v - 1) + graph.edge_cost(from, {u, v});
        if (e > candidate) {
          e = candidate;
          table.parents().at(u - 1, v - 1) = from.u;
        }
      }
    }
  }
  return table;
}

Path trace_path(const PathTable& table, Node dest) {
  if (dest.v != table.height() || dest.u < 1 || dest.u > table.width()) {
    throw Error(ErrorCode::kNotTopRow,
                "destination (" + std::to_string(dest.u) + "," + std::to_string(dest.v) +
                    ") is not on the top row " + std::to_string(table.height()));
  }
  Path path;
  path.cost = table.cost(dest);
  path.nodes.resize(static_cast<std::size_t>(table.height()));
  Node at = dest;
  for (int v = table.height(); v >= 1; --v) {
    path.nodes[static_cast<std::size_t>(v - 1)] = at;
    if (v > 1) at = *table.parent(at);
  }
  return path;
}

long long lateral_energy(const Path& path) {
  long long total = 0;
  for (std::size_t i = 1; i < path.nodes.size(); ++i) {
    const long long j = path.nodes[i].u - path.nodes[i - 1].u;
    total += j * j;
  }
  return total;
}

}  // namespace lanegraph::graph
