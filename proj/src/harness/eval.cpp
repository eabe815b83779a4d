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

#include "lanegraph/harness/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <opencv2/imgcodecs.hpp>

#include "lanegraph/error.hpp"
#include "lanegraph/features/features.hpp"
#include "lanegraph/lanes/pipeline.hpp"

namespace lanegraph::harness {
namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::size_t FrameEval::scored() const {
  return static_cast<std::size_t>(std::count_if(
      truth.begin(), truth.end(), [](const auto& t) { return t.counted && !t.expected_failure; }));
}

std::size_t FrameEval::detected() const {
  return static_cast<std::size_t>(std::count_if(truth.begin(), truth.end(), [](const auto& t) {
    return t.counted && !t.expected_failure && t.detected;
  }));
}

bool FrameEval::has_expected_failure() const {
  return std::any_of(truth.begin(), truth.end(),
                     [](const auto& t) { return t.counted && t.expected_failure; });
}

bool FrameEval::expected_failures_missed() const {
  return std::none_of(truth.begin(), truth.end(), [](const auto& t) {
    return t.counted && t.expected_failure && t.detected;
  });
}

double lateral_error(const geometry::Parabola& detected, const TruthLane& truth) {
  if (truth.valid_rows.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& [first, last] : truth.valid_rows) {
    for (int v = first; v <= last; ++v) {
      worst = std::max(worst, std::abs(detected(v) - truth.ipm(v)));
    }
  }
  return worst;
}

FrameEval evaluate_frame(const std::string& frame_id, const lanes::DetectionResult& result,
                         const GroundTruth& truth, double tolerance_px) {
  FrameEval frame;
  frame.frame_id = frame_id;
  frame.accepted_lanes = result.lanes.size();

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < truth.lanes.size(); ++i) {
    if (!truth.lanes[i].valid_rows.empty()) order.push_back(i);
  }
  const double y_near = truth.grid.y_start_m;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(truth.lanes[a].ground(y_near)) < std::abs(truth.lanes[b].ground(y_near));
  });
  std::vector<bool> counted(truth.lanes.size(), false);
  for (std::size_t i = 0; i < order.size() && i < kCountedLanes; ++i) counted[order[i]] = true;

  std::vector<bool> lane_matches(result.lanes.size(), false);
  for (std::size_t i = 0; i < truth.lanes.size(); ++i) {
    const TruthLane& t = truth.lanes[i];
    TruthMatch m;
    m.truth_index = i;
    m.counted = counted[i];
    m.expected_failure = t.expected_failure;
    m.max_step_px = t.max_step_px;
    m.error_px = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < result.lanes.size(); ++j) {
      const double e = lateral_error(result.lanes[j].coefficients, t);
      if (e <= tolerance_px) lane_matches[j] = true;
      if (e < m.error_px) {
        m.error_px = e;
        m.detected_lane = static_cast<int>(j);
      }
    }
    m.detected = m.error_px <= tolerance_px;
    frame.truth.push_back(m);
  }
  frame.false_lanes =
      static_cast<std::size_t>(std::count(lane_matches.begin(), lane_matches.end(), false));
  return frame;
}

EvalSummary summarize(std::vector<FrameEval> frames, double tolerance_px) {
  EvalSummary s;
  s.tolerance_px = tolerance_px;
  for (const auto& f : frames) {
    if (f.skipped) {
      ++s.frames_skipped;
      continue;
    }
    ++s.frames_evaluated;
    s.planted += f.scored();
    s.detected += f.detected();
    s.false_lanes += f.false_lanes;
    if (f.false_lanes > 0) ++s.frames_with_false_lanes;
    if (f.has_expected_failure()) {
      ++s.expected_failure_frames;
      if (f.expected_failures_missed()) ++s.expected_failure_frames_missed;
    }
  }
  s.precision_proxy = s.planted ? static_cast<double>(s.detected) / s.planted : 1.0;
  s.false_lane_frame_fraction =
      s.frames_evaluated ? static_cast<double>(s.frames_with_false_lanes) / s.frames_evaluated : 0.0;
  s.frames = std::move(frames);
  return s;
}

EvalSummary evaluate_dataset(const std::filesystem::path& dir, const RunConfig& config,
                             double tolerance_px, std::ostream* log) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "dataset directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> images;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      images.push_back(entry.path());
    }
  }
  std::sort(images.begin(), images.end());

  const auto& pipeline = config.pipeline;
  std::vector<FrameEval> frames;
  for (const auto& image_path : images) {
    const std::string name = image_path.stem().string();
    const auto truth_path = dir / (name + ".truth.json");
    const auto camera_path = dir / (name + ".camera.ini");
    FrameEval frame;
    frame.frame_id = name;
    try {
      if (!std::filesystem::exists(truth_path)) {
        throw Error(ErrorCode::kIo, "missing ground truth " + truth_path.filename().string());
      }
      const GroundTruth stored = truth_from_json(read_text(truth_path));
      const CameraConfig camera_config = std::filesystem::exists(camera_path)
                                             ? load_camera_config(camera_path.string())
                                             : resolve_camera(config);
      const cv::Mat image = cv::imread(image_path.string(), cv::IMREAD_UNCHANGED);
      if (image.empty()) throw Error(ErrorCode::kIo, "cannot read " + image_path.string());
      const cv::Mat gray = features::to_grayscale(image);
      const geometry::CameraModel camera = make_camera(camera_config, &gray);

      std::vector<geometry::Parabola> ground;
      for (const auto& l : stored.lanes) ground.push_back(l.ground);
      const GroundTruth truth = make_ground_truth(name, ground, camera, pipeline.grid,
                                                  pipeline.extraction.radius);
      const auto start = std::chrono::steady_clock::now();
      const lanes::DetectionResult result = lanes::detect(image, camera, pipeline);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      frame = evaluate_frame(name, result, truth, tolerance_px);
      frame.detect_ms = ms;
    } catch (const Error& e) {
      frame.skipped = true;
      frame.note = e.what();
      if (log) *log << "skipping " << name << ": " << e.what() << "\n";
    }
    frames.push_back(std::move(frame));
  }
  return summarize(std::move(frames), tolerance_px);
}

void write_eval_frames_csv(std::ostream& out, const EvalSummary& summary) {
  out << kEvalFramesHeader << "\n";
  for (const auto& f : summary.frames) {
    out << csv_field(f.frame_id) << "," << (f.skipped ? 1 : 0) << "," << f.accepted_lanes << ","
        << f.scored() << "," << f.detected() << "," << f.false_lanes << ","
        << (f.has_expected_failure() ? 1 : 0) << "," << f.detect_ms << "," << csv_field(f.note)
        << "\n";
  }
}

void write_eval_lanes_csv(std::ostream& out, const EvalSummary& summary) {
  out << kEvalLanesHeader << "\n";
  for (const auto& f : summary.frames) {
    for (const auto& t : f.truth) {
      out << csv_field(f.frame_id) << "," << t.truth_index << "," << (t.counted ? 1 : 0) << ","
          << (t.expected_failure ? 1 : 0) << "," << t.max_step_px << "," << t.error_px << ","
          << t.detected_lane << "," << (t.detected ? 1 : 0) << "\n";
    }
  }
}

void write_eval_summary_csv(std::ostream& out, const EvalSummary& s) {
  out << kEvalSummaryHeader << "\n"
      << s.frames_evaluated << "," << s.frames_skipped << "," << s.tolerance_px << ","
      << s.planted << "," << s.detected << "," << s.precision_proxy << "," << s.false_lanes << ","
      << s.frames_with_false_lanes << "," << s.false_lane_frame_fraction << ","
      << s.expected_failure_frames << "," << s.expected_failure_frames_missed << "\n";
}

}  // namespace lanegraph::harness
