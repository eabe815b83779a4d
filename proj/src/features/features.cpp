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

#include "lanegraph/features/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <opencv2/imgproc.hpp>

#include "lanegraph/error.hpp"

namespace lanegraph::features {
namespace {

void require_same_shape(const cv::Mat& a, const cv::Mat& b, const char* what) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kShapeMismatch, std::string(what) + ": grids differ in shape");
  }
}

}  // namespace

void FusionWeights::validate() const {
  if (!(edge >= 0.0 && edge <= 1.0 && gray >= 0.0 && gray <= 1.0) ||
      std::abs(edge + gray - 1.0) > kWeightSumTolerance) {
    throw Error(ErrorCode::kInvalidWeights,
                "fusion weights must lie in [0,1] and sum to 1, got w_e=" +
                    std::to_string(edge) + " w_g=" + std::to_string(gray));
  }
}

cv::Mat to_grayscale(const cv::Mat& image) {
  if (image.empty() || image.depth() != CV_8U) {
    throw Error(ErrorCode::kUnsupportedFormat, "expected a non-empty 8-bit image");
  }
  cv::Mat out;
  switch (image.channels()) {
    case 1: return image.clone();
    case 3: cv::cvtColor(image, out, cv::COLOR_BGR2GRAY); return out;
    case 4: cv::cvtColor(image, out, cv::COLOR_BGRA2GRAY); return out;
    default:
      throw Error(ErrorCode::kUnsupportedFormat,
                  "unsupported channel count " + std::to_string(image.channels()));
  }
}

cv::Mat normalize_gray(const cv::Mat& gray) {
  if (gray.type() != CV_8UC1) {
    throw Error(ErrorCode::kUnsupportedFormat, "normalize_gray expects 8-bit gray");
  }
  cv::Mat out;
  gray.convertTo(out, CV_64F, 1.0 / 255.0);
  return out;
}

cv::Mat fuse_features(const cv::Mat& edge, const cv::Mat& gray, const FusionWeights& weights) {
  weights.validate();
  require_same_shape(edge, gray, "fuse_features");
  if (edge.type() != CV_8UC1 || gray.type() != CV_64FC1) {
    throw Error(ErrorCode::kUnsupportedFormat, "fuse_features expects CV_8UC1 edges, CV_64FC1 gray");
  }
  cv::Mat out(edge.size(), CV_64FC1);
  for (int r = 0; r < edge.rows; ++r) {
    const auto* e = edge.ptr<std::uint8_t>(r);
    const auto* g = gray.ptr<double>(r);
    auto* f = out.ptr<double>(r);
    // Weights may sum to 1 only within rounding; keep f inside [0, 1].
    for (int c = 0; c < edge.cols; ++c) {
      f[c] = std::min(1.0, weights.edge * e[c] + weights.gray * g[c]);
    }
  }
  return out;
}

cv::Mat cost_grid(const cv::Mat& fused) {
  if (fused.type() != CV_64FC1) {
    throw Error(ErrorCode::kUnsupportedFormat, "cost_grid expects CV_64FC1");
  }
  cv::Mat out(fused.size(), CV_64FC1);
  for (int r = 0; r < fused.rows; ++r) {
    const auto* f = fused.ptr<double>(r);
    auto* c = out.ptr<double>(r);
    for (int i = 0; i < fused.cols; ++i) {
      if (!(f[i] >= 0.0 && f[i] <= 1.0)) {
        throw Error(ErrorCode::kOutOfRange, "feature value " + std::to_string(f[i]) +
                                                " at (" + std::to_string(i) + "," +
                                                std::to_string(r) + ") outside [0,1]");
      }
      c[i] = 1.0 - f[i];
    }
  }
  return out;
}

FeatureMaps compute_features(const cv::Mat& ipm_gray, const CannyParams& canny,
                             const FusionWeights& weights, const cv::Mat& coverage) {
  FeatureMaps maps;
  maps.edge = canny_edges(ipm_gray, canny);
  if (!coverage.empty()) {
    if (coverage.size() != ipm_gray.size() || coverage.type() != CV_8UC1) {
      throw Error(ErrorCode::kShapeMismatch, "coverage mask must match the raster");
    }
    cv::Mat inner;
    const int side = 2 * kCoverageMargin + 1;
    cv::erode(coverage != 0, inner, cv::getStructuringElement(cv::MORPH_RECT, {side, side}),
              {-1, -1}, 1, cv::BORDER_CONSTANT, cv::Scalar(255));
    maps.edge.setTo(0, inner == 0);
  }
  maps.gray = normalize_gray(ipm_gray);
  maps.fused = fuse_features(maps.edge, maps.gray, weights);
  return maps;
}

graph::Grid<double> raster_to_grid(const cv::Mat& raster) {
  if (raster.type() != CV_64FC1) {
    throw Error(ErrorCode::kUnsupportedFormat, "raster_to_grid expects CV_64FC1");
  }
  graph::Grid<double> grid(raster.cols, raster.rows);
  for (int r = 0; r < raster.rows; ++r) {
    const auto* src = raster.ptr<double>(r);
    auto dst = grid.row(r);
    for (int c = 0; c < raster.cols; ++c) dst[static_cast<std::size_t>(c)] = src[c];
  }
  return grid;
}

graph::Grid<double> to_graph_orientation(const cv::Mat& raster_cost) {
  return image_to_graph_orientation(raster_to_grid(raster_cost));
}

}  // namespace lanegraph::features
