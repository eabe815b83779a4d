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

#ifndef LANEGRAPH_GEOMETRY_VP_ESTIMATOR_HPP_
#define LANEGRAPH_GEOMETRY_VP_ESTIMATOR_HPP_

#include <optional>

#include <opencv2/core.hpp>

#include "lanegraph/geometry/camera.hpp"

namespace lanegraph::geometry {

// Best-effort vanishing point from straight image segments: probabilistic
// Hough lines on the lower part of the image, pairwise intersections, and
// the coordinate-wise median. Returns nullopt when fewer than two usable
// segments are found. Intended only as a fallback when no vanishing point
// is configured.
std::optional<VanishingPoint> estimate_vanishing_point(const cv::Mat& gray);

}  // namespace lanegraph::geometry

#endif  // LANEGRAPH_GEOMETRY_VP_ESTIMATOR_HPP_
