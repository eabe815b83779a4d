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

#include "lanegraph/geometry/vp_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <opencv2/imgproc.hpp>

#include "lanegraph/error.hpp"

namespace lanegraph::geometry {

std::optional<VanishingPoint> estimate_vanishing_point(const cv::Mat& gray) {
  if (gray.empty() || gray.type() != CV_8UC1) {
    throw Error(ErrorCode::kUnsupportedFormat, "vanishing point estimation expects 8-bit gray");
  }
  const int top = gray.rows / 3;
  const cv::Mat roi = gray.rowRange(top, gray.rows);
  cv::Mat blurred, edges;
  cv::GaussianBlur(roi, blurred, cv::Size(5, 5), 1.4);
  cv::Canny(blurred, edges, 50, 150);

  std::vector<cv::Vec4i> segments;
  const double min_length = 0.08 * std::hypot(gray.cols, gray.rows);
  cv::HoughLinesP(edges, segments, 1.0, CV_PI / 180.0, 40, min_length, 10.0);

  // Homogeneous lines of segments that are neither near-horizontal nor
  // near-vertical, the typical appearance of lane boundaries.
  std::vector<cv::Vec3d> lines;
  for (const auto& s : segments) {
    const double dx = s[2] - s[0];
    const double dy = s[3] - s[1];
    const double angle = std::abs(std::atan2(dy, dx)) * 180.0 / CV_PI;
    const double tilt = std::min(angle, 180.0 - angle);
    if (tilt < 15.0 || tilt > 80.0) continue;
    const cv::Vec3d a(s[0], s[1] + top, 1.0);
    const cv::Vec3d b(s[2], s[3] + top, 1.0);
    lines.push_back(a.cross(b));
  }

  std::vector<double> us, vs;
  const double margin = 2.0 * std::max(gray.cols, gray.rows);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const cv::Vec3d p = lines[i].cross(lines[j]);
      if (std::abs(p[2]) < 1e-9) continue;
      const double u = p[0] / p[2];
      const double v = p[1] / p[2];
      if (std::abs(u - gray.cols / 2.0) > margin || std::abs(v - gray.rows / 2.0) > margin) {
        continue;
      }
      us.push_back(u);
      vs.push_back(v);
    }
  }
  if (us.empty()) return std::nullopt;
  auto median = [](std::vector<double>& x) {
    std::nth_element(x.begin(), x.begin() + static_cast<long>(x.size() / 2), x.end());
    return x[x.size() / 2];
  };
  return VanishingPoint{median(us), median(vs)};
}

}  // namespace lanegraph::geometry
