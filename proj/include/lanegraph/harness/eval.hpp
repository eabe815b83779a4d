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

#ifndef LANEGRAPH_HARNESS_EVAL_HPP_
#define LANEGRAPH_HARNESS_EVAL_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lanegraph/harness/config.hpp"
#include "lanegraph/harness/synth.hpp"
#include "lanegraph/lanes/extraction.hpp"

namespace lanegraph::harness {

// Only the two planted lanes nearest the camera (smallest |X| at the near
// edge of the IPM area) are scored, like the closest-two-lanes protocol.
inline constexpr std::size_t kCountedLanes = 2;

struct TruthMatch {
  std::size_t truth_index = 0;
  bool counted = false;
  bool expected_failure = false;
  double max_step_px = 0.0;
  double error_px = 0.0;  // best max lateral deviation over valid rows; inf if no lane
  int detected_lane = -1;  // index of the best-matching accepted lane
  bool detected = false;   // error_px <= tolerance
};

struct FrameEval {
  std::string frame_id;
  bool skipped = false;
  std::string note;
  std::size_t accepted_lanes = 0;
  std::size_t false_lanes = 0;  // accepted lanes matching no planted lane
  std::vector<TruthMatch> truth;
  double detect_ms = 0.0;

  std::size_t scored() const;    // counted, not expected-failure
  std::size_t detected() const;  // scored and detected
  bool has_expected_failure() const;
  bool expected_failures_missed() const;  // every counted expected-failure lane missed
};

struct EvalSummary {
  std::vector<FrameEval> frames;
  double tolerance_px = 2.0;
  std::size_t frames_evaluated = 0;
  std::size_t frames_skipped = 0;
  std::size_t planted = 0;   // scored lanes over all frames
  std::size_t detected = 0;  // of those, detected within tolerance
  double precision_proxy = 1.0;  // detected / planted; 1 when nothing was planted
  std::size_t false_lanes = 0;
  std::size_t frames_with_false_lanes = 0;
  double false_lane_frame_fraction = 0.0;
  std::size_t expected_failure_frames = 0;
  std::size_t expected_failure_frames_missed = 0;
};

// Max |detected(v) - truth.ipm(v)| over the truth lane's valid rows
// (infinity when it has none).
double lateral_error(const geometry::Parabola& detected, const TruthLane& truth);

FrameEval evaluate_frame(const std::string& frame_id, const lanes::DetectionResult& result,
                         const GroundTruth& truth, double tolerance_px);

EvalSummary summarize(std::vector<FrameEval> frames, double tolerance_px);

// Runs detection on every <name>.png in `dir` that has <name>.truth.json and
// scores it against ground truth recomputed for the run's grid and k. The
// camera comes from <name>.camera.ini, or from the run config when absent.
// Scenes without ground truth are reported and skipped.
EvalSummary evaluate_dataset(const std::filesystem::path& dir, const RunConfig& config,
                             double tolerance_px, std::ostream* log = nullptr);

inline constexpr const char* kEvalFramesHeader =
    "frame_id,skipped,accepted_lanes,scored_lanes,detected_lanes,false_lanes,"
    "expected_failure,detect_ms,note";
inline constexpr const char* kEvalLanesHeader =
    "frame_id,truth_lane,counted,expected_failure,max_step_px,error_px,detected_lane,detected";
inline constexpr const char* kEvalSummaryHeader =
    "frames,skipped,tolerance_px,planted,detected,precision_proxy,false_lanes,"
    "frames_with_false_lanes,false_lane_frame_fraction,expected_failure_frames,"
    "expected_failure_frames_missed";

void write_eval_frames_csv(std::ostream& out, const EvalSummary& summary);
void write_eval_lanes_csv(std::ostream& out, const EvalSummary& summary);
void write_eval_summary_csv(std::ostream& out, const EvalSummary& summary);

}  // namespace lanegraph::harness

#endif  // LANEGRAPH_HARNESS_EVAL_HPP_
