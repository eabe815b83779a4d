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

#ifndef LANEGRAPH_GEOMETRY_IPM_HPP_
#define LANEGRAPH_GEOMETRY_IPM_HPP_

#include <vector>

#include <Eigen/Core>
#include <opencv2/core.hpp>

#include "lanegraph/geometry/camera.hpp"
#include "lanegraph/geometry/parabola.hpp"

namespace lanegraph::geometry {

// Rectangular patch of the ground plane sampled into a bird's-eye raster.
// Lateral extent is centred on the camera: X in [-x_range/2, x_range/2];
// forward extent is Y in [y_start, y_start + y_range]. Raster column 0 is
// the leftmost X, raster row 0 the farthest Y.
//
// Graph coordinates (1-based u = column, v = row counted from the raster
// bottom) are what lane models are expressed in.
struct IpmGrid {
  double x_range_m = 12.0;
  double y_range_m = 30.0;
  double y_start_m = 4.0;
  int out_width = 240;
  int out_height = 600;

  // Throws kInvalidConfig unless every extent and the resolution are positive.
  void validate() const;

  double scale_x() const noexcept { return x_range_m / out_width; }
  double scale_y() const noexcept { return y_range_m / out_height; }
  double x_min() const noexcept { return -0.5 * x_range_m; }
  double y_max() const noexcept { return y_start_m + y_range_m; }

  // Ground point at the centre of raster pixel (col, row).
  Eigen::Vector2d ground_of_pixel(double col, double row) const;
  // Ground point of graph coordinates (u, v).
  Eigen::Vector2d ground_of_graph(double u, double v) const;
  // Inverse of ground_of_graph.
  Eigen::Vector2d graph_of_ground(double x, double y) const;

  // Raster pixel for graph coordinates: col = u - 1, row = height - v.
  Eigen::Vector2d raster_of_graph(double u, double v) const {
    return {u - 1.0, out_height - v};
  }

  friend bool operator==(const IpmGrid&, const IpmGrid&) = default;
};

// Ground lane X = a Y^2 + b Y + c expressed in graph coordinates.
Parabola ground_to_graph(const IpmGrid& grid, const Parabola& ground);

// Resamples an 8-bit single-channel image into the bird's-eye raster with
// bilinear interpolation; ground points behind the camera or projecting
// outside the image are filled with 0.
cv::Mat warp_to_ipm(const cv::Mat& gray, const CameraModel& camera, const IpmGrid& grid);

// CV_8UC1 raster of the same shape: 1 where warp_to_ipm samples the image,
// 0 where it fills.
cv::Mat ipm_coverage(const CameraModel& camera, const IpmGrid& grid);

// Samples `lane` (graph coordinates) at every graph row, maps each sample to
// the source image and keeps the ones inside it. Empty when nothing is
// visible.
std::vector<cv::Point2d> project_lane_to_image(const Parabola& lane, const CameraModel& camera,
                                               const IpmGrid& grid);

// Lane sampled at every graph row, in raster pixel coordinates.
std::vector<cv::Point2d> lane_to_ipm_polyline(const Parabola& lane, const IpmGrid& grid);

}  // namespace lanegraph::geometry

#endif  // LANEGRAPH_GEOMETRY_IPM_HPP_
