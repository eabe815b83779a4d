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

#ifndef LANEGRAPH_LANES_EXTRACTION_HPP_
#define LANEGRAPH_LANES_EXTRACTION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <opencv2/core.hpp>

#include "lanegraph/geometry/parabola.hpp"
#include "lanegraph/graph/columnar_graph.hpp"
#include "lanegraph/graph/dp_solver.hpp"
#include "lanegraph/lanes/parabola_fit.hpp"

namespace lanegraph::lanes {

// Parabola in graph coordinates (u = column, v = row, both 1-based, v = 1
// nearest to the camera) plus the consensus statistics that accepted it.
struct LaneModel {
  Parabola coefficients;
  std::size_t inlier_count = 0;
  double inlier_ratio = 0.0;
  double path_cost = 0.0;
  graph::Node destination;
};

struct ExtractionConfig {
  double lambda = 2.0;             // lateral regulariser weight
  int radius = 3;                  // branch radius k
  double residual_threshold = 5.0;  // t_r, squared pixels
  // Loop guard: stop once the best remaining destination costs more than
  // epsilon. When unset, epsilon = stop_cost_per_step * (V - 1).
  std::optional<double> epsilon;
  double stop_cost_per_step = 0.55;
  int max_lanes = 4;
  int suppression_half_width = 8;  // w_s, columns
  double min_inlier_ratio = 0.8;   // rho_min
  // A candidate whose path stays within w_s columns of an accepted lane's
  // path on at least this fraction of rows re-traces that lane and is rejected.
  double max_overlap = 0.5;
  int ransac_iterations = 200;
  std::uint64_t seed = 1;

  // Throws kInvalidConfig listing every violated constraint.
  void validate() const;
  double epsilon_for(int height) const;

  friend bool operator==(const ExtractionConfig&, const ExtractionConfig&) = default;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

struct DetectionResult {
  std::vector<LaneModel> lanes;                          // in acceptance order
  std::vector<graph::Path> paths;                        // source path per lane
  std::vector<std::vector<cv::Point2d>> ipm_polylines;   // raster pixels
  std::vector<std::vector<cv::Point2d>> image_polylines; // source-image pixels
  std::size_t rejected_paths = 0;
  std::size_t iterations = 0;
  std::vector<StageTiming> timings;
};

// Upper bound on selection iterations: ceil(U / (2 w_s + 1)) + max_lanes.
std::size_t max_iterations(int width, const ExtractionConfig& config);

// Selection loop over a solved table: take the cheapest eligible top-row
// destination, trace its path, RANSAC-fit a parabola, accept it if the
// inlier ratio reaches rho_min and it does not re-trace an accepted lane,
// then suppress the destination and its w_s neighbours. Stops when the
// cheapest remaining cost exceeds epsilon, max_lanes lanes are accepted or
// the iteration bound is reached.
DetectionResult extract_lanes(const graph::PathTable& table, const ExtractionConfig& config);

// Builds the graph from a cost grid in graph orientation, solves it with the
// configured lambda and k, and runs the selection loop.
DetectionResult extract_lanes(const graph::Grid<double>& cost_grid,
                              const ExtractionConfig& config);

// Fraction of `candidate`'s rows lying within `half_width` columns of `other`.
double path_overlap(const graph::Path& candidate, const graph::Path& other, int half_width);

}  // namespace lanegraph::lanes

#endif  // LANEGRAPH_LANES_EXTRACTION_HPP_
