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

#ifndef LANEGRAPH_LANES_PIPELINE_HPP_
#define LANEGRAPH_LANES_PIPELINE_HPP_

#include <opencv2/core.hpp>

#include "lanegraph/features/features.hpp"
#include "lanegraph/geometry/camera.hpp"
#include "lanegraph/geometry/ipm.hpp"
#include "lanegraph/graph/grid.hpp"
#include "lanegraph/lanes/extraction.hpp"

namespace lanegraph::lanes {

struct PipelineConfig {
  geometry::IpmGrid grid;
  features::FusionWeights weights;
  features::CannyParams canny;
  ExtractionConfig extraction;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

// Intermediate rasters, exactly as consumed by the next stage.
struct PipelineArtifacts {
  cv::Mat gray;
  cv::Mat ipm;
  cv::Mat coverage;
  features::FeatureMaps features;
  graph::Grid<double> cost;  // graph orientation
};

// warp -> features -> graph -> selection -> back-projection.
DetectionResult detect(const cv::Mat& image, const geometry::CameraModel& camera,
                       const PipelineConfig& config, PipelineArtifacts* artifacts = nullptr);

}  // namespace lanegraph::lanes

#endif  // LANEGRAPH_LANES_PIPELINE_HPP_
