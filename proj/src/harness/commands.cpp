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

#include "lanegraph/harness/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include <opencv2/imgcodecs.hpp>

#include "lanegraph/error.hpp"
#include "lanegraph/features/features.hpp"
#include "lanegraph/graph/benchmark.hpp"
#include "lanegraph/harness/eval.hpp"
#include "lanegraph/harness/records.hpp"
#include "lanegraph/lanes/pipeline.hpp"

namespace lanegraph::harness {
namespace {

namespace fs = std::filesystem;

int report(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  return e.code() == ErrorCode::kInvalidConfig || e.code() == ErrorCode::kInvalidSpec
             ? kExitInvalidConfig
             : kExitFailure;
}

bool is_image(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".pgm" || ext == ".ppm";
}

std::vector<fs::path> list_inputs(const std::string& input) {
  if (input.empty()) throw Error(ErrorCode::kInvalidConfig, "no input given");
  const fs::path p(input);
  if (!fs::exists(p)) throw Error(ErrorCode::kIo, "input not found: " + input);
  if (!fs::is_directory(p)) return {p};
  std::vector<fs::path> images;
  for (const auto& entry : fs::directory_iterator(p)) {
    if (entry.is_regular_file() && is_image(entry.path())) images.push_back(entry.path());
  }
  std::sort(images.begin(), images.end());
  return images;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void detect_frame(const fs::path& image_path, const CameraConfig& camera_config,
                  const RunConfig& config, std::ostream& out, std::ostream& err) {
  const cv::Mat image = cv::imread(image_path.string(), cv::IMREAD_UNCHANGED);
  if (image.empty()) throw Error(ErrorCode::kIo, "cannot read image " + image_path.string());
  if (image.depth() != CV_8U) {
    throw Error(ErrorCode::kUnsupportedFormat, "expected an 8-bit image: " + image_path.string());
  }
  if (image.cols != camera_config.image_width || image.rows != camera_config.image_height) {
    throw Error(ErrorCode::kInvalidConfig,
                "image " + image_path.filename().string() + " is " + std::to_string(image.cols) +
                    "x" + std::to_string(image.rows) + " but the camera expects " +
                    std::to_string(camera_config.image_width) + "x" +
                    std::to_string(camera_config.image_height));
  }
  const cv::Mat gray = features::to_grayscale(image);
  const bool has_attitude = (camera_config.pitch_rad && camera_config.yaw_rad) ||
                            (camera_config.vp_u && camera_config.vp_v);
  const geometry::CameraModel camera = make_camera(camera_config, &gray);
  if (!has_attitude) {
    err << "warning: no vanishing point configured for " << image_path.filename().string()
        << "; using the fallback estimate (pitch " << camera.attitude().pitch << ", yaw "
        << camera.attitude().yaw << ")\n";
  }

  lanes::PipelineArtifacts artifacts;
  const lanes::DetectionResult result =
      lanes::detect(image, camera, config.pipeline, config.debug_dumps ? &artifacts : nullptr);

  const fs::path dir(config.paths.out);
  const std::string stem = image_path.stem().string();
  std::ostringstream records;
  write_lane_records(records, result.lanes);
  write_file_atomic(dir / (stem + ".lanes.csv"), records.str());
  std::ostringstream polylines;
  write_polylines(polylines, stem, result.image_polylines);
  write_file_atomic(dir / (stem + ".polylines.csv"), polylines.str());
  write_image_atomic(dir / (stem + ".overlay.png"), render_overlay(image, result.image_polylines));
  if (config.debug_dumps) {
    write_debug_dumps(dir, stem, artifacts, config.pipeline.extraction.radius);
  }
  out << stem << ": " << result.lanes.size() << " lane(s), " << result.rejected_paths
      << " rejected path(s)";
  for (const auto& t : result.timings) {
    out << " " << t.stage << "=" << std::fixed << std::setprecision(1) << t.milliseconds << "ms";
  }
  out.unsetf(std::ios::floatfield);
  out << std::setprecision(6) << "\n";
}

void write_effective_config(const RunConfig& config) {
  std::ostringstream text;
  write_run_config(text, config);
  write_file_atomic(fs::path(config.paths.out) / "effective_config.ini", text.str());
}

}  // namespace

int cmd_detect(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    const CameraConfig camera = resolve_camera(config);
    const auto inputs = list_inputs(config.paths.input);
    fs::create_directories(config.paths.out);
    write_effective_config(config);
    int status = kExitOk;
    for (const auto& image : inputs) {
      try {
        detect_frame(image, camera, config, out, err);
      } catch (const Error& e) {
        status = report(e, err);
      }
    }
    if (inputs.empty()) out << "no images found in " << config.paths.input << "\n";
    return status;
  } catch (const Error& e) {
    return report(e, err);
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_synth(const RunConfig& config, const SynthOptions& options, std::ostream& out,
              std::ostream& err) {
  try {
    config.pipeline.grid.validate();
    std::vector<SceneSpec> scenes;
    if (!options.scene_file.empty()) {
      SceneSpec spec = scene_from_json(read_text(options.scene_file));
      if (options.seed) spec.seed = *options.seed;
      scenes.push_back(std::move(spec));
    } else if (options.suite) {
      scenes = generate_suite(*options.suite, options.count, options.seed.value_or(1));
    } else {
      throw Error(ErrorCode::kInvalidConfig, "synth needs a scene file or a suite");
    }
    const fs::path dir(config.paths.out);
    for (const auto& spec : scenes) {
      write_scene(dir, spec, config.pipeline.grid, config.pipeline.extraction.radius);
    }
    out << "wrote " << scenes.size() << " scene(s) to " << dir.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    return report(e, err);
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_eval(const RunConfig& config, double tolerance_px, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    if (!(tolerance_px >= 0.0)) {
      throw Error(ErrorCode::kInvalidConfig, "tolerance must be non-negative");
    }
    if (config.paths.input.empty()) throw Error(ErrorCode::kInvalidConfig, "no dataset given");
    const EvalSummary summary = evaluate_dataset(config.paths.input, config, tolerance_px, &err);
    const fs::path dir(config.paths.out);
    fs::create_directories(dir);
    std::ostringstream frames, lanes, total;
    write_eval_frames_csv(frames, summary);
    write_eval_lanes_csv(lanes, summary);
    write_eval_summary_csv(total, summary);
    write_file_atomic(dir / "eval_frames.csv", frames.str());
    write_file_atomic(dir / "eval_lanes.csv", lanes.str());
    write_file_atomic(dir / "eval_summary.csv", total.str());
    out << "frames " << summary.frames_evaluated << " (skipped " << summary.frames_skipped
        << "), planted " << summary.planted << ", detected " << summary.detected
        << ", precision proxy " << summary.precision_proxy << " at " << tolerance_px << " px"
        << ", frames with false lanes " << summary.frames_with_false_lanes << ", expected-failure frames "
        << summary.expected_failure_frames << " (missed " << summary.expected_failure_frames_missed
        << ")\n";
    return kExitOk;
  } catch (const Error& e) {
    return report(e, err);
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_bench(const RunConfig& config, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    graph::BenchmarkOptions options;
    options.sizes = config.bench.sizes;
    options.radius = config.bench.radius;
    options.lambda = config.bench.lambda;
    options.repetitions = config.bench.repetitions;
    options.floyd_warshall_max_nodes = config.bench.floyd_warshall_max_nodes;
    options.seed = seed;
    const graph::BenchmarkReport report_data = graph::benchmark_solvers(options);
    const fs::path dir(config.paths.out);
    fs::create_directories(dir);
    std::ostringstream csv;
    graph::write_benchmark_csv(csv, report_data);
    write_file_atomic(dir / "bench.csv", csv.str());
    for (const auto& note : report_data.notes) out << "note: " << note << "\n";
    const auto sizes = graph::median_times(report_data, "dp").size();
    if (sizes >= 2) {
      out << "dp scaling: log-log slope " << std::fixed << std::setprecision(3)
          << report_data.dp_slope << " over " << sizes << " sizes, "
          << (report_data.dp_linear ? "linear" : "NOT linear") << " (accepted range ["
          << graph::kLinearSlopeMin << ", " << graph::kLinearSlopeMax << "])\n";
      out.unsetf(std::ios::floatfield);
    } else {
      out << "dp scaling: not assessed (one size)\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    return report(e, err);
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace lanegraph::harness
