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

#include "lanegraph/lanes/parabola_fit.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include <Eigen/Dense>

#include "lanegraph/error.hpp"

namespace lanegraph::lanes {
namespace {

std::size_t distinct_v_count(std::span<const LanePoint> points) {
  std::set<double> vs;
  for (const auto& p : points) {
    vs.insert(p.v);
    if (vs.size() >= 3) break;
  }
  return vs.size();
}

std::size_t count_inliers(const Parabola& model, std::span<const LanePoint> points,
                          double threshold) {
  std::size_t n = 0;
  for (const auto& p : points) n += squared_residual(model, p) < threshold;
  return n;
}

// Exact parabola through three points with distinct v.
Parabola interpolate(const LanePoint& a, const LanePoint& b, const LanePoint& c) {
  Eigen::Matrix3d m;
  m << a.v * a.v, a.v, 1.0, b.v * b.v, b.v, 1.0, c.v * c.v, c.v, 1.0;
  const Eigen::Vector3d x = m.fullPivLu().solve(Eigen::Vector3d(a.u, b.u, c.u));
  return {x[0], x[1], x[2]};
}

}  // namespace

std::vector<LanePoint> to_points(const graph::Path& path) {
  std::vector<LanePoint> out;
  out.reserve(path.nodes.size());
  for (const auto& n : path.nodes) out.push_back({static_cast<double>(n.u), static_cast<double>(n.v)});
  return out;
}

double squared_residual(const Parabola& model, const LanePoint& p) {
  const double r = p.u - model(p.v);
  return r * r;
}

Parabola fit_parabola_ls(std::span<const LanePoint> points) {
  if (distinct_v_count(points) < 3) {
    throw Error(ErrorCode::kRankDeficient, "parabola fit needs at least 3 distinct rows, got " +
                                               std::to_string(distinct_v_count(points)));
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    a(i, 0) = p.v * p.v;
    a(i, 1) = p.v;
    a(i, 2) = 1.0;
    b(i) = p.u;
  }
  const Eigen::Vector3d x = a.householderQr().solve(b);
  return {x[0], x[1], x[2]};
}

Parabola fit_parabola_ls(const graph::Path& path) {
  const auto points = to_points(path);
  return fit_parabola_ls(points);
}

RansacFit fit_parabola_ransac(std::span<const LanePoint> points, double threshold, int iterations,
                              std::uint64_t seed) {
  if (distinct_v_count(points) < 3) {
    throw Error(ErrorCode::kRankDeficient, "RANSAC needs at least 3 distinct rows");
  }
  if (!(threshold > 0.0) || iterations < 1) {
    throw Error(ErrorCode::kInvalidConfig, "RANSAC needs threshold > 0 and iterations >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  constexpr int kMaxRedraws = 100;

  Parabola best;
  std::size_t best_count = 0;
  for (int it = 0; it < iterations; ++it) {
    std::size_t i = 0, j = 0, k = 0;
    bool ok = false;
    for (int attempt = 0; attempt < kMaxRedraws && !ok; ++attempt) {
      i = pick(rng);
      j = pick(rng);
      k = pick(rng);
      ok = points[i].v != points[j].v && points[i].v != points[k].v && points[j].v != points[k].v;
    }
    if (!ok) continue;
    const Parabola model = interpolate(points[i], points[j], points[k]);
    const std::size_t count = count_inliers(model, points, threshold);
    if (count > best_count) {
      best_count = count;
      best = model;
    }
  }
  if (best_count < 3) {
    throw Error(ErrorCode::kNoConsensus, "no RANSAC model reached 3 inliers");
  }

  RansacFit fit;
  fit.model = best;
  fit.sampled_inliers = best_count;
  std::vector<LanePoint> consensus;
  for (const auto& p : points) {
    if (squared_residual(best, p) < threshold) consensus.push_back(p);
  }
  if (distinct_v_count(consensus) >= 3) {
    const Parabola refit = fit_parabola_ls(consensus);
    if (count_inliers(refit, points, threshold) >= best_count) {
      fit.model = refit;
      fit.refit_used = true;
    }
  }
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    if (squared_residual(fit.model, points[idx]) < threshold) fit.inliers.push_back(idx);
  }
  return fit;
}

RansacFit fit_parabola_ransac(const graph::Path& path, double threshold, int iterations,
                              std::uint64_t seed) {
  const auto points = to_points(path);
  return fit_parabola_ransac(points, threshold, iterations, seed);
}

}  // namespace lanegraph::lanes
