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

#ifndef LANEGRAPH_LANES_PARABOLA_FIT_HPP_
#define LANEGRAPH_LANES_PARABOLA_FIT_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lanegraph/geometry/parabola.hpp"
#include "lanegraph/graph/dp_solver.hpp"

namespace lanegraph::lanes {

using geometry::Parabola;

// Sample (u, v): u is the lateral coordinate predicted by the model.
struct LanePoint {
  double u = 0.0;
  double v = 0.0;
};

std::vector<LanePoint> to_points(const graph::Path& path);

// Least squares u ~ c2 v^2 + c1 v + c0 via Householder QR. Throws
// kRankDeficient when fewer than three distinct v values are present.
Parabola fit_parabola_ls(std::span<const LanePoint> points);
Parabola fit_parabola_ls(const graph::Path& path);

// Squared residual (u - model(v))^2.
double squared_residual(const Parabola& model, const LanePoint& p);

struct RansacFit {
  Parabola model;
  std::vector<std::size_t> inliers;  // indices with squared residual < threshold
  std::size_t sampled_inliers = 0;   // consensus of the best minimal-sample model
  bool refit_used = false;           // whether the least-squares refit was kept
  double inlier_ratio(std::size_t total) const {
    return total ? static_cast<double>(inliers.size()) / static_cast<double>(total) : 0.0;
  }
};

// Repeatedly fits three random samples exactly and counts points whose squared
// residual is below `threshold`; the best consensus set is then refit by
// least squares. The refit replaces the sampled model only if it keeps at
// least as many inliers. Samples with repeated v are redrawn. Throws
// kNoConsensus if no model reaches three inliers and kRankDeficient on
// fewer than three distinct v values.
RansacFit fit_parabola_ransac(std::span<const LanePoint> points, double threshold, int iterations,
                              std::uint64_t seed);
RansacFit fit_parabola_ransac(const graph::Path& path, double threshold, int iterations,
                              std::uint64_t seed);

}  // namespace lanegraph::lanes

#endif  // LANEGRAPH_LANES_PARABOLA_FIT_HPP_
