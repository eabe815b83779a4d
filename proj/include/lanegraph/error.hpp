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

#ifndef LANEGRAPH_ERROR_HPP_
#define LANEGRAPH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lanegraph {

enum class ErrorCode {
  kDimensionTooSmall,
  kNegativeCost,
  kBranchTooWide,
  kNotTopRow,
  kBruteForceCap,
  kSizeGuard,
  kDegenerateDirection,
  kInvalidCamera,
  kSingularHomography,
  kThresholdOrder,
  kShapeMismatch,
  kOutOfRange,
  kUnsupportedFormat,
  kInvalidWeights,
  kRankDeficient,
  kNoConsensus,
  kInvalidConfig,
  kInvalidSpec,
  kIo,
  kParse,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported through this exception; the code lets
// callers and tests distinguish the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lanegraph

#endif  // LANEGRAPH_ERROR_HPP_
