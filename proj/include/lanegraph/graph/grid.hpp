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

#ifndef LANEGRAPH_GRAPH_GRID_HPP_
#define LANEGRAPH_GRAPH_GRID_HPP_

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace lanegraph::graph {

// Dense row-major 2D array addressed as (col, row), both 0-based. When a Grid
// holds graph costs, row 0 is the bottom row of the graph (row 1 in 1-based
// node coordinates).
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height),
        cells_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
    assert(width >= 0 && height >= 0);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return cells_.empty(); }
  std::size_t size() const noexcept { return cells_.size(); }

  T& at(int col, int row) {
    assert(col >= 0 && col < width_ && row >= 0 && row < height_);
    return cells_[index(col, row)];
  }
  const T& at(int col, int row) const {
    assert(col >= 0 && col < width_ && row >= 0 && row < height_);
    return cells_[index(col, row)];
  }

  std::span<T> row(int r) {
    return {cells_.data() + index(0, r), static_cast<std::size_t>(width_)};
  }
  std::span<const T> row(int r) const {
    return {cells_.data() + index(0, r), static_cast<std::size_t>(width_)};
  }

  std::span<T> cells() noexcept { return cells_; }
  std::span<const T> cells() const noexcept { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int col, int row) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> cells_;
};

// Reverses row order. Applying it twice returns the original grid.
template <typename T>
Grid<T> flip_rows(const Grid<T>& grid) {
  Grid<T> out(grid.width(), grid.height());
  for (int r = 0; r < grid.height(); ++r) {
    auto src = grid.row(r);
    auto dst = out.row(grid.height() - 1 - r);
    for (std::size_t c = 0; c < src.size(); ++c) dst[c] = src[c];
  }
  return out;
}

}  // namespace lanegraph::graph

#endif  // LANEGRAPH_GRAPH_GRID_HPP_
