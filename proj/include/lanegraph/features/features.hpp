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

#ifndef LANEGRAPH_FEATURES_FEATURES_HPP_
#define LANEGRAPH_FEATURES_FEATURES_HPP_

#include <opencv2/core.hpp>

#include "lanegraph/features/canny.hpp"
#include "lanegraph/graph/grid.hpp"

namespace lanegraph::features {

// Fusion weights for f = w_e * f_e + w_g * f_g. They must sum to one; a
// violating pair is rejected, never renormalised.
struct FusionWeights {
  double edge = 0.6;
  double gray = 0.4;

  // Throws kInvalidWeights.
  void validate() const;

  friend bool operator==(const FusionWeights&, const FusionWeights&) = default;
};

inline constexpr double kWeightSumTolerance = 1e-9;

struct FeatureMaps {
  cv::Mat edge;   // CV_8UC1, values in {0, 1}
  cv::Mat gray;   // CV_64FC1, values in [0, 1]
  cv::Mat fused;  // CV_64FC1, values in [0, 1]
};

// 8-bit luminance with ITU-R BT.601 weights. Accepts CV_8UC1 (returned as a
// copy), CV_8UC3 (BGR) and CV_8UC4 (BGRA); anything else is kUnsupportedFormat.
cv::Mat to_grayscale(const cv::Mat& image);

// Fixed-range normalisation: gray / 255.
cv::Mat normalize_gray(const cv::Mat& gray);

// Pointwise w_e * f_e + w_g * f_g. Throws kShapeMismatch.
cv::Mat fuse_features(const cv::Mat& edge, const cv::Mat& gray, const FusionWeights& weights);

// Pointwise 1 - f. Throws kOutOfRange if any value leaves [0, 1].
cv::Mat cost_grid(const cv::Mat& fused);

// Canny, normalisation and fusion on an 8-bit bird's-eye raster. With a
// coverage mask (CV_8UC1, non-zero = sampled), edges within
// kCoverageMargin pixels of an unsampled pixel are cleared: they are
// responses to the fill boundary, not to the road.
FeatureMaps compute_features(const cv::Mat& ipm_gray, const CannyParams& canny,
                             const FusionWeights& weights, const cv::Mat& coverage = {});

inline constexpr int kCoverageMargin = 3;

// Copies a CV_64FC1 raster into a Grid without reordering rows.
graph::Grid<double> raster_to_grid(const cv::Mat& raster);

// Raster row 0 is the top of the image; graph row 1 is the bottom. Flips
// rows so the raster's bottom row becomes graph row 1. Its own inverse.
template <typename T>
graph::Grid<T> image_to_graph_orientation(const graph::Grid<T>& grid) {
  return graph::flip_rows(grid);
}

// raster_to_grid followed by image_to_graph_orientation.
graph::Grid<double> to_graph_orientation(const cv::Mat& raster_cost);

}  // namespace lanegraph::features

#endif  // LANEGRAPH_FEATURES_FEATURES_HPP_
