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

#ifndef LANEGRAPH_HARNESS_RECORDS_HPP_
#define LANEGRAPH_HARNESS_RECORDS_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "lanegraph/lanes/extraction.hpp"
#include "lanegraph/lanes/pipeline.hpp"

namespace lanegraph::harness {

inline constexpr const char* kLaneRecordHeader =
    "lane_id,beta2,beta1,beta0,inlier_ratio,path_cost";
inline constexpr const char* kPolylineHeader = "frame_id,lane_id,u,v";

// One row per lane, coefficients in graph coordinates; numbers round-trip.
void write_lane_records(std::ostream& out, const std::vector<lanes::LaneModel>& lanes);

struct LaneRecord {
  int lane_id = 0;
  geometry::Parabola coefficients;
  double inlier_ratio = 0.0;
  double path_cost = 0.0;
};
// Throws kParse on a malformed file.
std::vector<LaneRecord> read_lane_records(std::istream& in);

// Source-image polylines, one row per vertex.
void write_polylines(std::ostream& out, const std::string& frame_id,
                     const std::vector<std::vector<cv::Point2d>>& polylines);

// BGR copy of `image` with every polyline drawn in red.
cv::Mat render_overlay(const cv::Mat& image,
                       const std::vector<std::vector<cv::Point2d>>& polylines);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
// Encodes by extension (.png, .pgm, .ppm) and writes atomically.
void write_image_atomic(const std::filesystem::path& path, const cv::Mat& image);

// Debug dumps for one frame, written next to the records:
//   <stem>.ipm.pgm       bird's-eye gray raster (f_g = value / 255)
//   <stem>.edge.pgm      Canny map, 255 = edge
//   <stem>.gray.pgm      f_g * 255
//   <stem>.fused.pgm     f * 255, rounded (visual only)
//   <stem>.cost.txt      cost grid in the graph fixture format, exact
void write_debug_dumps(const std::filesystem::path& dir, const std::string& stem,
                       const lanes::PipelineArtifacts& artifacts, int radius);

}  // namespace lanegraph::harness

#endif  // LANEGRAPH_HARNESS_RECORDS_HPP_
