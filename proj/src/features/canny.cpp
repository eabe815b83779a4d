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

#include "lanegraph/features/canny.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lanegraph/error.hpp"

namespace lanegraph::features {
namespace {

// BORDER_REFLECT_101: ... 2 1 | 0 1 2 ... n-1 | n-2 ...
int reflect101(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * n - 2 - i;
  }
  return i;
}

std::vector<double> gaussian_kernel(int size, double sigma) {
  std::vector<double> k(static_cast<std::size_t>(size));
  const int half = size / 2;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double x = i - half;
    k[static_cast<std::size_t>(i)] = std::exp(-x * x / (2.0 * sigma * sigma));
    sum += k[static_cast<std::size_t>(i)];
  }
  for (double& w : k) w /= sum;
  return k;
}

// Separable Gaussian smoothing kept in floating point.
cv::Mat smooth(const cv::Mat& gray, int size, double sigma) {
  const auto k = gaussian_kernel(size, sigma);
  const int half = size / 2;
  const int rows = gray.rows, cols = gray.cols;
  cv::Mat horiz(rows, cols, CV_64F), out(rows, cols, CV_64F);
  for (int r = 0; r < rows; ++r) {
    const auto* src = gray.ptr<std::uint8_t>(r);
    auto* dst = horiz.ptr<double>(r);
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int i = -half; i <= half; ++i) {
        acc += k[static_cast<std::size_t>(i + half)] * src[reflect101(c + i, cols)];
      }
      dst[c] = acc;
    }
  }
  for (int r = 0; r < rows; ++r) {
    auto* dst = out.ptr<double>(r);
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int i = -half; i <= half; ++i) {
        acc += k[static_cast<std::size_t>(i + half)] * horiz.at<double>(reflect101(r + i, rows), c);
      }
      dst[c] = acc;
    }
  }
  return out;
}

}  // namespace

void CannyParams::validate() const {
  if (!(low >= 0.0 && low < high)) {
    throw Error(ErrorCode::kThresholdOrder, "canny thresholds need 0 <= low < high, got low=" +
                                                std::to_string(low) +
                                                " high=" + std::to_string(high));
  }
  if (!(sigma > 0.0) || kernel_size < 1 || kernel_size % 2 == 0) {
    throw Error(ErrorCode::kInvalidConfig, "canny needs sigma > 0 and an odd kernel size");
  }
}

cv::Mat canny_edges(const cv::Mat& gray, const CannyParams& params) {
  if (gray.empty() || gray.type() != CV_8UC1) {
    throw Error(ErrorCode::kUnsupportedFormat, "canny expects a non-empty 8-bit gray image");
  }
  params.validate();
  const int rows = gray.rows, cols = gray.cols;
  const cv::Mat s = smooth(gray, params.kernel_size, params.sigma);

  cv::Mat gx(rows, cols, CV_64F), gy(rows, cols, CV_64F), mag(rows, cols, CV_64F);
  for (int r = 0; r < rows; ++r) {
    const auto* up = s.ptr<double>(reflect101(r - 1, rows));
    const auto* mid = s.ptr<double>(r);
    const auto* dn = s.ptr<double>(reflect101(r + 1, rows));
    for (int c = 0; c < cols; ++c) {
      const int l = reflect101(c - 1, cols), rr = reflect101(c + 1, cols);
      const double dx = (up[rr] - up[l]) + 2.0 * (mid[rr] - mid[l]) + (dn[rr] - dn[l]);
      const double dy = (dn[l] - up[l]) + 2.0 * (dn[c] - up[c]) + (dn[rr] - up[rr]);
      gx.at<double>(r, c) = dx;
      gy.at<double>(r, c) = dy;
      mag.at<double>(r, c) = std::hypot(dx, dy);
    }
  }

  auto magnitude = [&](int r, int c) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) return 0.0;
    return mag.at<double>(r, c);
  };

  // 0 = no edge, 1 = weak candidate, 2 = strong edge.
  cv::Mat state(rows, cols, CV_8UC1, cv::Scalar(0));
  const double tan22 = std::tan(CV_PI / 8.0);
  const double tan67 = std::tan(3.0 * CV_PI / 8.0);
  std::vector<cv::Point> stack;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double m = mag.at<double>(r, c);
      if (m <= params.low) continue;
      const double dx = gx.at<double>(r, c);
      const double dy = gy.at<double>(r, c);
      const double ax = std::abs(dx), ay = std::abs(dy);
      // Neighbours along the gradient. Axis cases compare strict/non-strict to
      // keep a single pixel on symmetric plateaus; diagonals are strict.
      double before, after;
      bool diagonal = false;
      if (ay <= tan22 * ax) {
        before = magnitude(r, c - 1);
        after = magnitude(r, c + 1);
      } else if (ay >= tan67 * ax) {
        before = magnitude(r - 1, c);
        after = magnitude(r + 1, c);
      } else if ((dx > 0) == (dy > 0)) {
        diagonal = true;
        before = magnitude(r - 1, c - 1);
        after = magnitude(r + 1, c + 1);
      } else {
        diagonal = true;
        before = magnitude(r - 1, c + 1);
        after = magnitude(r + 1, c - 1);
      }
      if (!(m > before && (diagonal ? m > after : m >= after))) continue;
      if (m > params.high) {
        state.at<std::uint8_t>(r, c) = 2;
        stack.emplace_back(c, r);
      } else {
        state.at<std::uint8_t>(r, c) = 1;
      }
    }
  }

  while (!stack.empty()) {
    const cv::Point p = stack.back();
    stack.pop_back();
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int r = p.y + dr, c = p.x + dc;
        if (r < 0 || r >= rows || c < 0 || c >= cols) continue;
        auto& v = state.at<std::uint8_t>(r, c);
        if (v == 1) {
          v = 2;
          stack.emplace_back(c, r);
        }
      }
    }
  }

  cv::Mat edges(rows, cols, CV_8UC1);
  for (int r = 0; r < rows; ++r) {
    const auto* src = state.ptr<std::uint8_t>(r);
    auto* dst = edges.ptr<std::uint8_t>(r);
    for (int c = 0; c < cols; ++c) dst[c] = src[c] == 2 ? 1 : 0;
  }
  return edges;
}

}  // namespace lanegraph::features
