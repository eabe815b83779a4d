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

#include "lanegraph/geometry/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "lanegraph/error.hpp"

namespace lanegraph::geometry {

namespace {

constexpr double kBoundsTolerance = 1e-9;

// Maps (x, y) into [0, max] when it lies within tolerance of the image.
bool inside_image(double& x, double& y, double max_x, double max_y) {
  if (!(x >= -kBoundsTolerance && x <= max_x + kBoundsTolerance && y >= -kBoundsTolerance &&
        y <= max_y + kBoundsTolerance)) {
    return false;
  }
  x = std::clamp(x, 0.0, max_x);
  y = std::clamp(y, 0.0, max_y);
  return true;
}

}  // namespace

void IpmGrid::validate() const {
  std::string problems;
  if (!(x_range_m > 0.0)) problems += " x_range_m must be > 0;";
  if (!(y_range_m > 0.0)) problems += " y_range_m must be > 0;";
  if (!std::isfinite(y_start_m)) problems += " y_start_m must be finite;";
  if (out_width <= 0) problems += " out_width must be > 0;";
  if (out_height <= 0) problems += " out_height must be > 0;";
  if (!problems.empty()) throw Error(ErrorCode::kInvalidConfig, "ipm grid:" + problems);
}

Eigen::Vector2d IpmGrid::ground_of_pixel(double col, double row) const {
  return {x_min() + (col + 0.5) * scale_x(), y_max() - (row + 0.5) * scale_y()};
}

Eigen::Vector2d IpmGrid::ground_of_graph(double u, double v) const {
  return {x_min() + (u - 0.5) * scale_x(), y_start_m + (v - 0.5) * scale_y()};
}

Eigen::Vector2d IpmGrid::graph_of_ground(double x, double y) const {
  return {(x - x_min()) / scale_x() + 0.5, (y - y_start_m) / scale_y() + 0.5};
}

Parabola ground_to_graph(const IpmGrid& grid, const Parabola& ground) {
  // Y = p v + q, u = X / sx + offset.
  const double p = grid.scale_y();
  const double q = grid.y_start_m - 0.5 * grid.scale_y();
  const double sx = grid.scale_x();
  Parabola out;
  out.c2 = ground.c2 * p * p / sx;
  out.c1 = (2.0 * ground.c2 * p * q + ground.c1 * p) / sx;
  out.c0 = (ground.c2 * q * q + ground.c1 * q + ground.c0 - grid.x_min()) / sx + 0.5;
  return out;
}

cv::Mat warp_to_ipm(const cv::Mat& gray, const CameraModel& camera, const IpmGrid& grid) {
  if (gray.empty() || gray.type() != CV_8UC1) {
    throw Error(ErrorCode::kUnsupportedFormat, "warp_to_ipm expects a non-empty 8-bit gray image");
  }
  grid.validate();
  const Eigen::Matrix3d h = ipm_homography(camera);
  cv::Mat out(grid.out_height, grid.out_width, CV_8UC1, cv::Scalar(0));
  const double max_x = gray.cols - 1;
  const double max_y = gray.rows - 1;
  for (int row = 0; row < grid.out_height; ++row) {
    auto* dst = out.ptr<std::uint8_t>(row);
    for (int col = 0; col < grid.out_width; ++col) {
      const Eigen::Vector2d g = grid.ground_of_pixel(col, row);
      const Eigen::Vector3d p = h * Eigen::Vector3d(g.x(), g.y(), 1.0);
      if (!(p.z() > 0.0)) continue;
      double x = p.x() / p.z();
      double y = p.y() / p.z();
      if (!inside_image(x, y, max_x, max_y)) continue;
      const int x0 = static_cast<int>(x);
      const int y0 = static_cast<int>(y);
      const int x1 = std::min(x0 + 1, gray.cols - 1);
      const int y1 = std::min(y0 + 1, gray.rows - 1);
      const double fx = x - x0;
      const double fy = y - y0;
      const auto* r0 = gray.ptr<std::uint8_t>(y0);
      const auto* r1 = gray.ptr<std::uint8_t>(y1);
      const double top = r0[x0] * (1.0 - fx) + r0[x1] * fx;
      const double bottom = r1[x0] * (1.0 - fx) + r1[x1] * fx;
      dst[col] = cv::saturate_cast<std::uint8_t>(top * (1.0 - fy) + bottom * fy);
    }
  }
  return out;
}

cv::Mat ipm_coverage(const CameraModel& camera, const IpmGrid& grid) {
  grid.validate();
  const Eigen::Matrix3d h = ipm_homography(camera);
  cv::Mat out(grid.out_height, grid.out_width, CV_8UC1, cv::Scalar(0));
  const double max_x = camera.image_width() - 1;
  const double max_y = camera.image_height() - 1;
  for (int row = 0; row < grid.out_height; ++row) {
    auto* dst = out.ptr<std::uint8_t>(row);
    for (int col = 0; col < grid.out_width; ++col) {
      const Eigen::Vector2d g = grid.ground_of_pixel(col, row);
      const Eigen::Vector3d p = h * Eigen::Vector3d(g.x(), g.y(), 1.0);
      if (!(p.z() > 0.0)) continue;
      double x = p.x() / p.z();
      double y = p.y() / p.z();
      dst[col] = inside_image(x, y, max_x, max_y) ? 1 : 0;
    }
  }
  return out;
}

std::vector<cv::Point2d> project_lane_to_image(const Parabola& lane, const CameraModel& camera,
                                               const IpmGrid& grid) {
  const Eigen::Matrix3d h = ipm_homography(camera);
  std::vector<cv::Point2d> out;
  const double max_x = camera.image_width() - 1;
  const double max_y = camera.image_height() - 1;
  for (int v = 1; v <= grid.out_height; ++v) {
    const Eigen::Vector2d g = grid.ground_of_graph(lane(v), v);
    const Eigen::Vector3d p = h * Eigen::Vector3d(g.x(), g.y(), 1.0);
    if (!(p.z() > 0.0)) continue;
    double x = p.x() / p.z();
    double y = p.y() / p.z();
    if (inside_image(x, y, max_x, max_y)) out.emplace_back(x, y);
  }
  return out;
}

std::vector<cv::Point2d> lane_to_ipm_polyline(const Parabola& lane, const IpmGrid& grid) {
  std::vector<cv::Point2d> out;
  out.reserve(static_cast<std::size_t>(grid.out_height));
  for (int v = 1; v <= grid.out_height; ++v) {
    const Eigen::Vector2d r = grid.raster_of_graph(lane(v), v);
    out.emplace_back(r.x(), r.y());
  }
  return out;
}

}  // namespace lanegraph::geometry
