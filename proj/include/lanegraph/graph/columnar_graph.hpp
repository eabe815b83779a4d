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

#ifndef LANEGRAPH_GRAPH_COLUMNAR_GRAPH_HPP_
#define LANEGRAPH_GRAPH_COLUMNAR_GRAPH_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "lanegraph/graph/grid.hpp"

namespace lanegraph::graph {

// Node coordinates are 1-based: u is the column in [1, U], v is the row in
// [1, V]. Row 1 is the bottom row (path sources), row V the top row (the
// destination set).
struct Node {
  int u = 0;
  int v = 0;

  friend bool operator==(const Node&, const Node&) = default;
};

// U x V matrix-structured DAG. Every edge goes from row v to row v + 1 and
// spans at most `radius` columns; neighbours that fall outside [1, U] do
// not exist.
//
// Costs are stored per incoming edge: the edge entering (u, v) from
// (u - j, v - 1) is addressed by offset j in [-radius, radius].
class ColumnarGraph {
 public:
  using EdgeCostFn = std::function<double(Node from, Node to)>;

  // Edge cost equals the cost of the node being entered. `node_costs.at(c, r)`
  // is the cost of node (c + 1, r + 1).
  static ColumnarGraph from_node_costs(const Grid<double>& node_costs, int radius);

  // General pairwise costs; `cost` is queried once for every existing edge.
  static ColumnarGraph from_edge_costs(int width, int height, int radius,
                                       const EdgeCostFn& cost);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int radius() const noexcept { return radius_; }

  std::size_t node_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  std::size_t edge_count() const noexcept;

  bool contains(Node n) const noexcept {
    return n.u >= 1 && n.u <= width_ && n.v >= 1 && n.v <= height_;
  }
  bool has_edge(Node from, Node to) const noexcept;
  int in_degree(Node n) const noexcept;

  // Cost of the edge [from, to]. Throws kOutOfRange when no such edge exists.
  double edge_cost(Node from, Node to) const;

  // Unchecked hot-path accessor, 0-based: cost of entering (col, row) from
  // (col - offset, row - 1). Requires row >= 1 and the source column in range.
  double incoming_cost(int col, int row, int offset) const noexcept {
    if (entry_costing_) {
      return node_costs_[static_cast<std::size_t>(row) * width_ + col];
    }
    return edge_costs_[(static_cast<std::size_t>(row) * width_ + col) * span() +
                       static_cast<std::size_t>(offset + radius_)];
  }

  // True when every edge cost equals the entered node's cost.
  bool entry_costing() const noexcept { return entry_costing_; }

 private:
  ColumnarGraph(int width, int height, int radius)
      : width_(width), height_(height), radius_(radius) {}

  std::size_t span() const noexcept { return static_cast<std::size_t>(2 * radius_ + 1); }

  int width_;
  int height_;
  int radius_;
  bool entry_costing_ = true;
  std::vector<double> node_costs_;
  std::vector<double> edge_costs_;
};

// Same as ColumnarGraph::from_node_costs.
ColumnarGraph build_graph(const Grid<double>& cost_grid, int radius);

}  // namespace lanegraph::graph

#endif  // LANEGRAPH_GRAPH_COLUMNAR_GRAPH_HPP_
