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

#include "lanegraph/graph/grid_io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "lanegraph/error.hpp"

namespace lanegraph::graph {

void write_fixture(std::ostream& out, const GraphFixture& fixture) {
  const auto& grid = fixture.costs;
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << grid.width() << ' ' << grid.height() << ' ' << fixture.radius << '\n';
  for (int r = 0; r < grid.height(); ++r) {
    const auto row = grid.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ' ';
      out << row[c];
    }
    out << '\n';
  }
  out.precision(old_precision);
}

GraphFixture read_fixture(std::istream& in) {
  int width = 0, height = 0, radius = 0;
  if (!(in >> width >> height >> radius) || width < 0 || height < 0) {
    throw Error(ErrorCode::kParse, "fixture header must be 'U V k'");
  }
  GraphFixture fixture{Grid<double>(width, height), radius};
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      if (!(in >> fixture.costs.at(c, r))) {
        throw Error(ErrorCode::kParse, "fixture truncated at row " + std::to_string(r + 1) +
                                           ", column " + std::to_string(c + 1));
      }
    }
  }
  return fixture;
}

void save_fixture(const std::string& path, const GraphFixture& fixture) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  write_fixture(out, fixture);
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

GraphFixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  return read_fixture(in);
}

}  // namespace lanegraph::graph
