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

#include "lanegraph/lanes/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "lanegraph/error.hpp"

namespace lanegraph::lanes {

void ExtractionConfig::validate() const {
  std::string problems;
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) problems += " lambda must be >= 0;";
  if (radius < 0) problems += " k must be >= 0;";
  if (!(residual_threshold > 0.0)) problems += " t_r must be > 0;";
  if (epsilon && !(*epsilon > 0.0)) problems += " epsilon must be > 0;";
  if (!(stop_cost_per_step > 0.0)) problems += " epsilon_per_step must be > 0;";
  if (max_lanes < 1) problems += " max_lanes must be >= 1;";
  if (suppression_half_width < 0) problems += " suppression_half_width must be >= 0;";
  if (!(min_inlier_ratio > 0.0 && min_inlier_ratio <= 1.0)) {
    problems += " min_inlier_ratio must lie in (0,1];";
  }
  if (!(max_overlap > 0.0 && max_overlap <= 1.0)) problems += " max_overlap must lie in (0,1];";
  if (ransac_iterations < 1) problems += " ransac_iterations must be >= 1;";
  if (!problems.empty()) throw Error(ErrorCode::kInvalidConfig, "extraction:" + problems);
}

double ExtractionConfig::epsilon_for(int height) const {
  return epsilon ? *epsilon : stop_cost_per_step * (height - 1);
}

std::size_t max_iterations(int width, const ExtractionConfig& config) {
  const int window = 2 * config.suppression_half_width + 1;
  return static_cast<std::size_t>((width + window - 1) / window + config.max_lanes);
}

double path_overlap(const graph::Path& candidate, const graph::Path& other, int half_width) {
  const std::size_t n = std::min(candidate.nodes.size(), other.nodes.size());
  if (candidate.nodes.empty()) return 0.0;
  std::size_t close = 0;
  for (std::size_t i = 0; i < n; ++i) {
    close += std::abs(candidate.nodes[i].u - other.nodes[i].u) <= half_width;
  }
  return static_cast<double>(close) / static_cast<double>(candidate.nodes.size());
}

DetectionResult extract_lanes(const graph::PathTable& table, const ExtractionConfig& config) {
  config.validate();
  const int width = table.width();
  const int height = table.height();
  const double epsilon = config.epsilon_for(height);
  const std::size_t limit = max_iterations(width, config);

  std::vector<double> remaining = table.top_row_costs();
  DetectionResult result;
  while (result.iterations < limit) {
    const auto best = std::min_element(remaining.begin(), remaining.end());
    if (best == remaining.end() || !(*best <= epsilon)) break;
    ++result.iterations;
    const int col = static_cast<int>(best - remaining.begin());
    const graph::Node dest{col + 1, height};
    const graph::Path path = graph::trace_path(table, dest);

    bool accepted = false;
    LaneModel lane;
    if (height >= 3) {
      try {
        const RansacFit fit = fit_parabola_ransac(path, config.residual_threshold,
                                                  config.ransac_iterations, config.seed);
        lane.coefficients = fit.model;
        lane.inlier_count = fit.inliers.size();
        lane.inlier_ratio = fit.inlier_ratio(path.nodes.size());
        lane.path_cost = path.cost;
        lane.destination = dest;
        accepted = lane.inlier_ratio >= config.min_inlier_ratio;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoConsensus) throw;
      }
    }
    if (accepted) {
      for (const auto& other : result.paths) {
        if (path_overlap(path, other, config.suppression_half_width) >= config.max_overlap) {
          accepted = false;
          break;
        }
      }
    }

    const int lo = std::max(0, col - config.suppression_half_width);
    const int hi = std::min(width - 1, col + config.suppression_half_width);
    for (int c = lo; c <= hi; ++c) remaining[static_cast<std::size_t>(c)] = graph::kUnreached;

    if (!accepted) {
      ++result.rejected_paths;
      continue;
    }
    result.lanes.push_back(lane);
    result.paths.push_back(path);
    std::vector<cv::Point2d> polyline;
    polyline.reserve(static_cast<std::size_t>(height));
    for (int v = 1; v <= height; ++v) polyline.emplace_back(lane.coefficients(v) - 1.0, height - v);
    result.ipm_polylines.push_back(std::move(polyline));
    if (static_cast<int>(result.lanes.size()) >= config.max_lanes) break;
  }
  return result;
}

DetectionResult extract_lanes(const graph::Grid<double>& cost_grid,
                              const ExtractionConfig& config) {
  config.validate();
  const graph::ColumnarGraph g = graph::build_graph(cost_grid, config.radius);
  const graph::PathTable table = graph::solve_dp(g, config.lambda);
  return extract_lanes(table, config);
}

}  // namespace lanegraph::lanes
