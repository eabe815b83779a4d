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

#include "lanegraph/graph/columnar_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "lanegraph/error.hpp"

namespace lanegraph::graph {
namespace {

void validate_shape(int width, int height, int radius) {
  if (width < 1 || height < 2) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "graph needs U >= 1 and V >= 2, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
  if (radius < 0) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "branch radius must be >= 0, got " + std::to_string(radius));
  }
  if (radius >= width) {
    throw Error(ErrorCode::kBranchTooWide,
                "branch radius " + std::to_string(radius) + " must be smaller than U = " +
                    std::to_string(width));
  }
}

void validate_cost(double cost, Node at) {
  if (!std::isfinite(cost) || cost < 0.0) {
    throw Error(ErrorCode::kNegativeCost,
                "cost at (" + std::to_string(at.u) + "," + std::to_string(at.v) +
                    ") must be finite and >= 0");
  }
}

}  // namespace

ColumnarGraph ColumnarGraph::from_node_costs(const Grid<double>& node_costs, int radius) {
  validate_shape(node_costs.width(), node_costs.height(), radius);
  ColumnarGraph g(node_costs.width(), node_costs.height(), radius);
  g.entry_costing_ = true;
  g.node_costs_.assign(node_costs.cells().begin(), node_costs.cells().end());
  for (int r = 0; r < g.height_; ++r) {
    for (int c = 0; c < g.width_; ++c) validate_cost(node_costs.at(c, r), {c + 1, r + 1});
  }
  return g;
}

ColumnarGraph ColumnarGraph::from_edge_costs(int width, int height, int radius,
                                             const EdgeCostFn& cost) {
  validate_shape(width, height, radius);
  ColumnarGraph g(width, height, radius);
  g.entry_costing_ = false;
  g.edge_costs_.assign(g.node_count() * g.span(), 0.0);
  for (int r = 1; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      for (int j = -radius; j <= radius; ++j) {
        const int src = c - j;
        if (src < 0 || src >= width) continue;
        const Node from{src + 1, r};
        const Node to{c + 1, r + 1};
        const double value = cost(from, to);
        validate_cost(value, to);
        g.edge_costs_[(static_cast<std::size_t>(r) * width + c) * g.span() +
                      static_cast<std::size_t>(j + radius)] = value;
      }
    }
  }
  return g;
}

std::size_t ColumnarGraph::edge_count() const noexcept {
  std::size_t per_row = 0;
  for (int u = 1; u <= width_; ++u) per_row += static_cast<std::size_t>(in_degree({u, 2}));
  return per_row * static_cast<std::size_t>(height_ - 1);
}

bool ColumnarGraph::has_edge(Node from, Node to) const noexcept {
  return contains(from) && contains(to) && to.v == from.v + 1 &&
         std::abs(to.u - from.u) <= radius_;
}

int ColumnarGraph::in_degree(Node n) const noexcept {
  if (!contains(n) || n.v == 1) return 0;
  const int lo = std::max(1, n.u - radius_);
  const int hi = std::min(width_, n.u + radius_);
  return hi - lo + 1;
}

double ColumnarGraph::edge_cost(Node from, Node to) const {
  if (!has_edge(from, to)) {
    throw Error(ErrorCode::kOutOfRange,
                "no edge [(" + std::to_string(from.u) + "," + std::to_string(from.v) + "),(" +
                    std::to_string(to.u) + "," + std::to_string(to.v) + ")]");
  }
  return incoming_cost(to.u - 1, to.v - 1, to.u - from.u);
}

ColumnarGraph build_graph(const Grid<double>& cost_grid, int radius) {
  return ColumnarGraph::from_node_costs(cost_grid, radius);
}

}  // namespace lanegraph::graph
