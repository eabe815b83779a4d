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

#include "lanegraph/error.hpp"

namespace lanegraph {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDimensionTooSmall: return "dimension-too-small";
    case ErrorCode::kNegativeCost: return "negative-cost";
    case ErrorCode::kBranchTooWide: return "branch-too-wide";
    case ErrorCode::kNotTopRow: return "not-top-row";
    case ErrorCode::kBruteForceCap: return "brute-force-cap";
    case ErrorCode::kSizeGuard: return "size-guard";
    case ErrorCode::kDegenerateDirection: return "degenerate-direction";
    case ErrorCode::kInvalidCamera: return "invalid-camera";
    case ErrorCode::kSingularHomography: return "singular-homography";
    case ErrorCode::kThresholdOrder: return "threshold-order";
    case ErrorCode::kShapeMismatch: return "shape-mismatch";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kUnsupportedFormat: return "unsupported-format";
    case ErrorCode::kInvalidWeights: return "invalid-weights";
    case ErrorCode::kRankDeficient: return "rank-deficient";
    case ErrorCode::kNoConsensus: return "no-consensus";
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kInvalidSpec: return "invalid-spec";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace lanegraph
