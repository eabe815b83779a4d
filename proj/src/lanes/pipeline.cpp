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

#include "lanegraph/lanes/pipeline.hpp"

#include <chrono>
#include <utility>

namespace lanegraph::lanes {
namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& out) : out_(out), start_(Clock::now()) {}
  void lap(const char* stage) {
    const auto now = Clock::now();
    out_.push_back({stage, std::chrono::duration<double, std::milli>(now - start_).count()});
    start_ = now;
  }

 private:
  using Clock = std::chrono::steady_clock;
  std::vector<StageTiming>& out_;
  Clock::time_point start_;
};

}  // namespace

DetectionResult detect(const cv::Mat& image, const geometry::CameraModel& camera,
                       const PipelineConfig& config, PipelineArtifacts* artifacts) {
  config.grid.validate();
  config.weights.validate();
  config.canny.validate();
  config.extraction.validate();

  std::vector<StageTiming> timings;
  StageClock clock(timings);
  cv::Mat gray = features::to_grayscale(image);
  cv::Mat ipm = geometry::warp_to_ipm(gray, camera, config.grid);
  cv::Mat coverage = geometry::ipm_coverage(camera, config.grid);
  clock.lap("warp");
  features::FeatureMaps maps =
      features::compute_features(ipm, config.canny, config.weights, coverage);
  graph::Grid<double> cost = features::to_graph_orientation(features::cost_grid(maps.fused));
  clock.lap("features");
  const graph::ColumnarGraph g = graph::build_graph(cost, config.extraction.radius);
  const graph::PathTable table = graph::solve_dp(g, config.extraction.lambda);
  clock.lap("dp");
  DetectionResult result = extract_lanes(table, config.extraction);
  clock.lap("selection");
  for (const auto& lane : result.lanes) {
    result.image_polylines.push_back(
        geometry::project_lane_to_image(lane.coefficients, camera, config.grid));
  }
  clock.lap("projection");
  result.timings = std::move(timings);

  if (artifacts) {
    artifacts->gray = std::move(gray);
    artifacts->ipm = std::move(ipm);
    artifacts->coverage = std::move(coverage);
    artifacts->features = std::move(maps);
    artifacts->cost = std::move(cost);
  }
  return result;
}

}  // namespace lanegraph::lanes
