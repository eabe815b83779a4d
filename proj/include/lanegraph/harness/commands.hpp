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

#ifndef LANEGRAPH_HARNESS_COMMANDS_HPP_
#define LANEGRAPH_HARNESS_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "lanegraph/harness/config.hpp"
#include "lanegraph/harness/synth.hpp"

namespace lanegraph::harness {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidConfig = 2;

// Detects lanes in paths.input (one image, or every .png/.pgm/.ppm in a
// directory) and writes, per frame <stem>, into paths.out:
//   <stem>.lanes.csv       lane records
//   <stem>.polylines.csv   source-image polylines
//   <stem>.overlay.png     input with the lanes drawn in red
// plus debug dumps when enabled and effective_config.ini.
int cmd_detect(const RunConfig& config, std::ostream& out, std::ostream& err);

struct SynthOptions {
  std::string scene_file;          // render one JSON scene spec, or
  std::optional<SuiteKind> suite;  // generate a suite
  int count = 50;
  std::optional<std::uint64_t> seed;  // suite seed; for a scene file, overrides its seed
};

// Writes scenes (see write_scene) into paths.out, with ground truth for the
// run's IPM grid and k.
int cmd_synth(const RunConfig& config, const SynthOptions& options, std::ostream& out,
              std::ostream& err);

// Evaluates the synthetic dataset in paths.input; writes eval_frames.csv,
// eval_lanes.csv and eval_summary.csv into paths.out.
int cmd_eval(const RunConfig& config, double tolerance_px, std::ostream& out, std::ostream& err);

// Runs the solver benchmark from [bench]; writes bench.csv into paths.out
// and prints the DP linear-scaling verdict.
int cmd_bench(const RunConfig& config, std::uint64_t seed, std::ostream& out, std::ostream& err);

}  // namespace lanegraph::harness

#endif  // LANEGRAPH_HARNESS_COMMANDS_HPP_
