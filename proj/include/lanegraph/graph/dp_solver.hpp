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

#ifndef LANEGRAPH_GRAPH_DP_SOLVER_HPP_
#define LANEGRAPH_GRAPH_DP_SOLVER_HPP_

#include <limits>
#include <optional>
#include <vector>

#include "lanegraph/graph/columnar_graph.hpp"
#include "lanegraph/graph/grid.hpp"

namespace lanegraph::graph {

inline constexpr double kUnreached = std::numeric_limits<double>::infinity();

// Minimum cumulative cost E and backpointers P for every node. Backpointers
// are stored as the 1-based predecessor column (0 on row 1, which has none).
class PathTable {
 public:
  PathTable() = default;
  PathTable(int width, int height)
      : costs_(width, height, kUnreached), parents_(width, height, 0) {}

  int width() const noexcept { return costs_.width(); }
  int height() const noexcept { return costs_.height(); }

  double cost(Node n) const { return costs_.at(n.u - 1, n.v - 1); }
  std::optional<Node> parent(Node n) const {
    const int col = parents_.at(n.u - 1, n.v - 1);
    if (col == 0) return std::nullopt;
    return Node{col, n.v - 1};
  }

  // E(., V), indexed by column - 1.
  std::vector<double> top_row_costs() const;

  Grid<double>& costs() noexcept { return costs_; }
  const Grid<double>& costs() const noexcept { return costs_; }
  Grid<int>& parents() noexcept { return parents_; }
  const Grid<int>& parents() const noexcept { return parents_; }

  friend bool operator==(const PathTable&, const PathTable&) = default;

 private:
  Grid<double> costs_;
  Grid<int> parents_;
};

// One node per row, bottom row first.
struct Path {
  std::vector<Node> nodes;
  double cost = 0.0;
};

// Order in which lateral offsets are tried. Only a strictly better candidate
// replaces the incumbent, so earlier offsets win ties: smallest |j| first,
// negative before positive.
std::vector<int> offset_order(int radius);

// Minimum-cost DP with the lateral regulariser lambda * j^2 added to every
// step of offset j. lambda = 0 gives the unregularised recurrence.
PathTable solve_dp(const ColumnarGraph& graph, double lambda = 0.0);

// Unregularised recurrence written against the pairwise edge_cost() API;
// kept separate from solve_dp as a second route for cross-checking.
PathTable solve_dp_unregularized(const ColumnarGraph& graph);

// Follows backpointers from a top-row destination down to row 1.
Path trace_path(const PathTable& table, Node dest);

// Sum of j^2 over the steps of a path.
long long lateral_energy(const Path& path);

}  // namespace lanegraph::graph

#endif  // LANEGRAPH_GRAPH_DP_SOLVER_HPP_
