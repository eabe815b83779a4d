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

#ifndef LANEGRAPH_GRAPH_GRID_IO_HPP_
#define LANEGRAPH_GRAPH_GRID_IO_HPP_

#include <iosfwd>
#include <string>

#include "lanegraph/graph/grid.hpp"

namespace lanegraph::graph {

// Plain-text graph fixture: first line "U V k", then V lines of U
// space-separated costs, bottom row first. Values are written with enough
// digits to read back bit-identical.
struct GraphFixture {
  Grid<double> costs;
  int radius = 0;

  friend bool operator==(const GraphFixture&, const GraphFixture&) = default;
};

void write_fixture(std::ostream& out, const GraphFixture& fixture);
GraphFixture read_fixture(std::istream& in);

void save_fixture(const std::string& path, const GraphFixture& fixture);
GraphFixture load_fixture(const std::string& path);

}  // namespace lanegraph::graph

#endif  // LANEGRAPH_GRAPH_GRID_IO_HPP_
