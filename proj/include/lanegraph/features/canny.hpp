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

#ifndef LANEGRAPH_FEATURES_CANNY_HPP_
#define LANEGRAPH_FEATURES_CANNY_HPP_

#include <opencv2/core.hpp>

namespace lanegraph::features {

// Thresholds apply to the L2 magnitude of the 3x3 Sobel gradient of the
// smoothed image (the scale used by most Canny implementations).
struct CannyParams {
  double low = 50.0;
  double high = 150.0;
  double sigma = 1.4;
  int kernel_size = 5;

  // Throws kThresholdOrder unless 0 <= low < high; kInvalidConfig for a
  // non-positive sigma or an even / non-positive kernel size.
  void validate() const;

  friend bool operator==(const CannyParams&, const CannyParams&) = default;
};

// Gaussian smoothing, Sobel gradients, non-maximum suppression along the
// quantised gradient direction and 8-connected hysteresis. Input must be
// CV_8UC1; output is CV_8UC1 with edge pixels = 1 and everything else 0.
cv::Mat canny_edges(const cv::Mat& gray, const CannyParams& params = {});

}  // namespace lanegraph::features

#endif  // LANEGRAPH_FEATURES_CANNY_HPP_
