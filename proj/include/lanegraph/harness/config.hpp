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

#ifndef LANEGRAPH_HARNESS_CONFIG_HPP_
#define LANEGRAPH_HARNESS_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <opencv2/core.hpp>

#include "lanegraph/geometry/camera.hpp"
#include "lanegraph/graph/reference_solvers.hpp"
#include "lanegraph/lanes/pipeline.hpp"

namespace lanegraph::harness {

// Camera description as found in configuration files. Attitude comes from,
// in order of preference: an explicit pitch/yaw override, the configured
// vanishing point, or the fallback estimator run on the image.
struct CameraConfig {
  geometry::Intrinsics intrinsics;
  int image_width = 0;
  int image_height = 0;
  double height_m = 0.0;
  std::optional<double> vp_u;
  std::optional<double> vp_v;
  std::optional<double> pitch_rad;
  std::optional<double> yaw_rad;

  // Appends one message per violated constraint.
  void collect_errors(std::vector<std::string>& errors) const;

  friend bool operator==(const CameraConfig&, const CameraConfig&) = default;
};

struct PathsConfig {
  std::string input;
  std::string camera;  // camera file, used when [camera] has no inline keys
  std::string out = "out";

  friend bool operator==(const PathsConfig&, const PathsConfig&) = default;
};

struct BenchConfig {
  std::vector<std::pair<int, int>> sizes{{32, 32}, {64, 64}, {128, 128}, {256, 256}, {512, 512}};
  int radius = 3;
  double lambda = 0.0;
  int repetitions = 3;
  std::size_t floyd_warshall_max_nodes = graph::kFloydWarshallMaxNodes;

  friend bool operator==(const BenchConfig&, const BenchConfig&) = default;
};

struct RunConfig {
  PathsConfig paths;
  std::optional<CameraConfig> camera;  // inline [camera] section
  lanes::PipelineConfig pipeline;
  BenchConfig bench;
  bool debug_dumps = false;

  // Throws kInvalidConfig whose message lists every violated constraint.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Sections: [paths], [camera], [ipm], [features], [extraction], [bench],
// [run]. Unknown sections or keys are errors. Missing keys keep defaults.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);
// Writes every effective value; the output re-parses to an equal RunConfig.
void write_run_config(std::ostream& out, const RunConfig& config);

// Flat key=value camera file (fx, fy, cu, cv, image_width, image_height,
// height_m, optional vp_u, vp_v, pitch_rad, yaw_rad).
CameraConfig parse_camera_config(std::istream& in);
CameraConfig load_camera_config(const std::string& path);
void write_camera_config(std::ostream& out, const CameraConfig& camera);

// Resolves the camera for a run: inline section first, then the camera file.
// Throws kIo naming the file when it is missing.
CameraConfig resolve_camera(const RunConfig& config);

// Builds the model; `image` (8-bit gray) feeds the fallback estimator when
// neither an override nor a vanishing point is configured.
geometry::CameraModel make_camera(const CameraConfig& camera, const cv::Mat* gray = nullptr);

}  // namespace lanegraph::harness

#endif  // LANEGRAPH_HARNESS_CONFIG_HPP_
