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

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lanegraph/error.hpp"
#include "lanegraph/harness/commands.hpp"
#include "lanegraph/harness/config.hpp"

namespace {

using namespace lanegraph;

struct Common {
  std::string config;
  std::string out;
  std::string input;
  std::string camera;
  std::optional<std::uint64_t> seed;
  bool debug_dumps = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_camera) {
  cmd->add_option("--config", c.config, "run configuration (INI)");
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--seed", c.seed, "seed for every random choice");
  if (with_camera) {
    cmd->add_option("--input", c.input, "input image, image directory or dataset directory");
    cmd->add_option("--camera", c.camera, "camera configuration file");
  }
}

harness::RunConfig effective_config(const Common& c) {
  harness::RunConfig config = c.config.empty() ? harness::RunConfig{}
                                               : harness::load_run_config(c.config);
  if (!c.out.empty()) config.paths.out = c.out;
  if (!c.input.empty()) config.paths.input = c.input;
  if (!c.camera.empty()) {
    config.paths.camera = c.camera;
    config.camera.reset();
  }
  if (c.seed) config.pipeline.extraction.seed = *c.seed;
  if (c.debug_dumps) config.debug_dumps = true;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lanegraph: columnar-DAG lane extraction toolkit"};
  app.require_subcommand(1);

  Common detect_opts;
  auto* detect = app.add_subcommand("detect", "detect lanes in an image or a directory of images");
  add_common(detect, detect_opts, true);
  detect->add_flag("--debug-dumps", detect_opts.debug_dumps, "write intermediate rasters");

  Common synth_opts;
  harness::SynthOptions synth_extra;
  std::string suite;
  auto* synth = app.add_subcommand("synth", "render synthetic road scenes with ground truth");
  add_common(synth, synth_opts, false);
  synth->add_option("--scene", synth_extra.scene_file, "JSON scene spec");
  synth->add_option("--suite", suite, "generate a suite: standard, empty or curvature");
  synth->add_option("--count", synth_extra.count, "number of scenes in the suite");

  Common eval_opts;
  double tolerance_px = 2.0;
  auto* eval = app.add_subcommand("eval", "score detection on a synthetic dataset");
  add_common(eval, eval_opts, true);
  eval->add_option("--tolerance-px", tolerance_px, "lateral tolerance in IPM pixels");

  Common bench_opts;
  std::string sizes;
  std::optional<int> bench_k;
  std::optional<double> bench_lambda;
  std::optional<int> bench_reps;
  auto* bench = app.add_subcommand("bench", "benchmark DP against the reference solvers");
  add_common(bench, bench_opts, false);
  bench->add_option("--sizes", sizes, "comma-separated UxV list");
  bench->add_option("--k", bench_k, "branch radius");
  bench->add_option("--lambda", bench_lambda, "regulariser weight for DP");
  bench->add_option("--repetitions", bench_reps, "repetitions per size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (detect->parsed()) {
      return harness::cmd_detect(effective_config(detect_opts), std::cout, std::cerr);
    }
    if (synth->parsed()) {
      const harness::RunConfig config = effective_config(synth_opts);
      synth_extra.seed = synth_opts.seed;
      if (!suite.empty()) synth_extra.suite = harness::parse_suite_kind(suite);
      return harness::cmd_synth(config, synth_extra, std::cout, std::cerr);
    }
    if (eval->parsed()) {
      return harness::cmd_eval(effective_config(eval_opts), tolerance_px, std::cout, std::cerr);
    }
    harness::RunConfig config = effective_config(bench_opts);
    if (!sizes.empty()) {
      std::istringstream ini("[bench]\nsizes = " + sizes + "\n");
      config.bench.sizes = harness::parse_run_config(ini).bench.sizes;
    }
    if (bench_k) config.bench.radius = *bench_k;
    if (bench_lambda) config.bench.lambda = *bench_lambda;
    if (bench_reps) config.bench.repetitions = *bench_reps;
    return harness::cmd_bench(config, bench_opts.seed.value_or(1), std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidConfig ? harness::kExitInvalidConfig
                                                 : harness::kExitFailure;
  }
}
