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

#ifndef LANEGRAPH_HARNESS_SYNTH_HPP_
#define LANEGRAPH_HARNESS_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <opencv2/core.hpp>

#include "lanegraph/geometry/camera.hpp"
#include "lanegraph/geometry/ipm.hpp"
#include "lanegraph/geometry/parabola.hpp"
#include "lanegraph/harness/config.hpp"

namespace lanegraph::harness {

// A painted lane marking whose centre line on the ground is
// X = c2 Y^2 + c1 Y + c0 (metres, world frame).
struct PlantedLane {
  geometry::Parabola ground;
  double width_m = 0.12;
  double dash_m = 0.0;  // 0 = solid
  double gap_m = 0.0;
  double dash_phase_m = 0.0;
  bool yellow = false;

  friend bool operator==(const PlantedLane&, const PlantedLane&) = default;
};

// Darkened band on the ground through (0, y_center) whose long axis makes
// `angle_rad` with the X axis.
struct ShadowBand {
  double y_center_m = 10.0;
  double angle_rad = 0.0;
  double width_m = 2.0;
  double darkness = 0.6;  // multiplier inside the band

  friend bool operator==(const ShadowBand&, const ShadowBand&) = default;
};

// Opaque image-space ellipse drawn over the scene.
struct Occluder {
  double u = 0.0;
  double v = 0.0;
  double radius_u = 10.0;
  double radius_v = 10.0;
  double gray = 60.0;

  friend bool operator==(const Occluder&, const Occluder&) = default;
};

struct SceneSpec {
  std::string name = "scene";
  // Intrinsics, image size, height and the attitude override are used for
  // rendering; any configured vanishing point is ignored.
  CameraConfig camera;
  std::vector<PlantedLane> lanes;
  double asphalt = 95.0;
  double marking = 215.0;
  double texture_amplitude = 6.0;
  double exposure_gain = 1.0;  // applied before clipping to [0, 255]
  double noise_sigma = 2.0;
  std::vector<ShadowBand> shadows;
  std::vector<Occluder> occluders;
  int supersample = 3;
  std::uint64_t seed = 1;

  // Throws kInvalidSpec listing every violated constraint.
  void validate() const;

  friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

// A planted lane as seen by the detector: its graph-coordinate parabola and
// the graph rows on which it is observable (inside the raster and at least
// kTruthMargin pixels from unsampled raster area).
struct TruthLane {
  geometry::Parabola ground;
  geometry::Parabola ipm;
  std::vector<std::pair<int, int>> valid_rows;  // inclusive [first, last] runs
  double max_step_px = 0.0;                     // largest |u(v+1) - u(v)| on valid rows
  bool expected_failure = false;                // max_step_px > k

  std::size_t valid_row_count() const;
  bool valid(int v) const;
};

inline constexpr int kTruthMargin = 5;

struct GroundTruth {
  std::string name;
  geometry::IpmGrid grid;
  int radius = 3;
  std::vector<TruthLane> lanes;
};

geometry::CameraModel scene_camera(const SceneSpec& spec);

// Camera file contents for a rendered scene: the rendering intrinsics plus
// the vanishing point of the road direction, without an attitude override.
CameraConfig scene_camera_config(const SceneSpec& spec);

TruthLane make_truth_lane(const geometry::Parabola& ground, const geometry::CameraModel& camera,
                          const geometry::IpmGrid& grid, int radius);
GroundTruth make_ground_truth(const std::string& name, const std::vector<geometry::Parabola>& ground,
                              const geometry::CameraModel& camera, const geometry::IpmGrid& grid,
                              int radius);

// Deterministic BGR rendering.
cv::Mat render_scene(const SceneSpec& spec);

std::string scene_to_json(const SceneSpec& spec);
SceneSpec scene_from_json(const std::string& text);  // throws kInvalidSpec
std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const std::string& text);  // throws kParse

enum class SuiteKind {
  kStandard,       // straight and curved road, some frames with shadows or occluders
  kEmpty,          // no markings, stressors only
  kHighCurvature,  // curvature sweep crossing the k-step envelope
};

SuiteKind parse_suite_kind(const std::string& name);  // throws kInvalidConfig
std::vector<SceneSpec> generate_suite(SuiteKind kind, int count, std::uint64_t seed);

// Files written per scene under `dir`:
//   <name>.png          rendered frame
//   <name>.camera.ini   camera file (vanishing point, no attitude)
//   <name>.truth.json   ground truth for `grid` and `radius`
//   <name>.scene.json   the scene description
void write_scene(const std::filesystem::path& dir, const SceneSpec& spec,
                 const geometry::IpmGrid& grid, int radius);

}  // namespace lanegraph::harness

#endif  // LANEGRAPH_HARNESS_SYNTH_HPP_
