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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "lanegraph/error.hpp"
#include "lanegraph/features/features.hpp"
#include "lanegraph/geometry/ipm.hpp"
#include "lanegraph/harness/eval.hpp"
#include "lanegraph/harness/synth.hpp"
#include "lanegraph/lanes/extraction.hpp"
#include "lanegraph/lanes/parabola_fit.hpp"
#include "lanegraph/lanes/pipeline.hpp"
#include "test_support.hpp"

using namespace lanegraph;
using namespace lanegraph::lanes;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIo;
}

std::vector<LanePoint> load_points(const std::string& name) {
  std::vector<LanePoint> out;
  for (const auto& [v, u] : test::read_points(name)) out.push_back({u, v});
  return out;
}

std::vector<LanePoint> sample(const Parabola& p, int rows) {
  std::vector<LanePoint> out;
  for (int v = 1; v <= rows; ++v) out.push_back({p(v), static_cast<double>(v)});
  return out;
}

graph::Grid<double> stripe_grid(int width, int height, const Parabola& lane, int half) {
  graph::Grid<double> g(width, height, 1.0);
  for (int v = 1; v <= height; ++v) {
    const int c = static_cast<int>(std::lround(lane(v))) - 1;
    for (int d = -half; d <= half; ++d) {
      if (c + d >= 0 && c + d < width) g.at(c + d, v - 1) = 0.0;
    }
  }
  return g;
}

std::vector<LanePoint> noise_points(int rows, double width, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(1.0, width);
  std::vector<LanePoint> out;
  for (int v = 1; v <= rows; ++v) out.push_back({u(rng), static_cast<double>(v)});
  return out;
}

harness::SceneSpec road(std::vector<geometry::Parabola> lanes) {
  harness::SceneSpec s;
  s.camera.intrinsics = {960, 960, 640, 480};
  s.camera.image_width = 1280;
  s.camera.image_height = 960;
  s.camera.height_m = 1.6;
  s.camera.pitch_rad = 0.04;
  s.camera.yaw_rad = 0.0;
  for (const auto& p : lanes) s.lanes.push_back({p, 0.12});
  return s;
}

}  // namespace

TEST_SUITE("lanes") {

TEST_CASE("fit_parabola_ls: exact and vertical data") {
  const Parabola p = fit_parabola_ls(sample({2, 3, 1}, 40));
  CHECK(std::abs(p.c2 - 2) < 1e-9);
  CHECK(std::abs(p.c1 - 3) < 1e-9);
  CHECK(std::abs(p.c0 - 1) < 1e-9);
  graph::Path vertical;
  for (int v = 1; v <= 30; ++v) vertical.nodes.push_back({17, v});
  const Parabola q = fit_parabola_ls(vertical);
  CHECK(std::abs(q.c2) < 1e-12);
  CHECK(std::abs(q.c1) < 1e-10);
  CHECK(std::abs(q.c0 - 17) < 1e-9);
}

TEST_CASE("fit_parabola_ls: noisy fixture against the pseudo-inverse oracle") {
  // tests/oracles/fit_oracle.py: sigma = 0.5, truth (0.003, 0.1, 50).
  const auto pts = load_points("noisy_parabola.txt");
  REQUIRE(pts.size() == 100);
  const Parabola p = fit_parabola_ls(pts);
  CHECK(p.c2 == doctest::Approx(0.003053396809894061).epsilon(1e-9));
  CHECK(p.c1 == doctest::Approx(0.094066870761722043).epsilon(1e-9));
  CHECK(p.c0 == doctest::Approx(50.079766605945515).epsilon(1e-9));
  CHECK(std::abs(p.c2 - 0.003) < 3 * 6.70988e-05);
  CHECK(std::abs(p.c1 - 0.1) < 3 * 0.00699484);
  CHECK(std::abs(p.c0 - 50.0) < 3 * 0.153051);
}

TEST_CASE("fit_parabola_ls: rank deficiency") {
  const std::vector<LanePoint> two_rows = {{1, 1}, {2, 2}, {3, 2}, {4, 1}};
  CHECK(code_of([&] { (void)fit_parabola_ls(two_rows); }) == ErrorCode::kRankDeficient);
  CHECK(code_of([] { (void)fit_parabola_ls(std::vector<LanePoint>{}); }) ==
        ErrorCode::kRankDeficient);
  CHECK(squared_residual({0, 0, 1}, {4, 7}) == 9.0);
}

TEST_CASE("ransac: outlier-free parabola") {
  const auto pts = sample({0.01, -0.5, 40}, 60);
  const RansacFit fit = fit_parabola_ransac(pts, 5.0, 50, 3);
  CHECK(fit.inliers.size() == pts.size());
  CHECK(std::abs(fit.model.c2 - 0.01) < 1e-9);
  CHECK(std::abs(fit.model.c1 + 0.5) < 1e-7);
  CHECK(std::abs(fit.model.c0 - 40) < 1e-6);
}

TEST_CASE("ransac: 30-row fixture matches the exhaustive best-triple search") {
  // tests/oracles/fit_oracle.py: outlier rows 17 19 24 26 29 30, best triple
  // consensus 24, unique best set, least-squares refit below.
  const auto pts = load_points("ransac_30.txt");
  REQUIRE(pts.size() == 30);
  const RansacFit fit = fit_parabola_ransac(pts, 5.0, 200, 1);
  CHECK(fit.sampled_inliers == 24);
  std::vector<std::size_t> expected;
  for (std::size_t i = 0; i < 30; ++i) {
    const int v = static_cast<int>(i) + 1;
    if (v != 17 && v != 19 && v != 24 && v != 26 && v != 29 && v != 30) expected.push_back(i);
  }
  CHECK(fit.inliers == expected);
  CHECK(fit.refit_used);
  CHECK(fit.model.c2 == doctest::Approx(0.0099999999999999985).epsilon(1e-9));
  CHECK(std::abs(fit.model.c1) < 1e-9);
  CHECK(fit.model.c0 == doctest::Approx(1.999999999999998).epsilon(1e-9));
  CHECK(fit.inlier_ratio(30) >= 0.78);
  CHECK(std::abs(fit.model.c2 - 0.01) <= 1e-3);
}

TEST_CASE("ransac: refit never lowers consensus and inliers satisfy the threshold") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto pts = sample({0.0005 * trial, 0.2, 50}, 120);
    for (auto& p : pts) p.u += noise(rng);
    const RansacFit fit = fit_parabola_ransac(pts, 5.0, 200, trial);
    CHECK(fit.inliers.size() >= fit.sampled_inliers);
    for (std::size_t i : fit.inliers) CHECK(squared_residual(fit.model, pts[i]) < 5.0);
  }
}

TEST_CASE("ransac: pure noise is rejected") {
  int rejected = 0;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const auto pts = noise_points(600, 240.0, rng);
    const RansacFit fit = fit_parabola_ransac(pts, 5.0, 200, seed);
    rejected += fit.inlier_ratio(pts.size()) < 0.8;
  }
  CHECK(rejected >= 95);
}

TEST_CASE("ransac: errors and determinism") {
  const auto pts = sample({0.002, 0.1, 7}, 20);
  const RansacFit a = fit_parabola_ransac(pts, 5.0, 30, 42);
  const RansacFit b = fit_parabola_ransac(pts, 5.0, 30, 42);
  CHECK(a.model == b.model);
  CHECK(a.inliers == b.inliers);
  CHECK(code_of([&] { (void)fit_parabola_ransac(pts, 0.0, 30, 1); }) == ErrorCode::kInvalidConfig);
  CHECK(code_of([&] { (void)fit_parabola_ransac(pts, 5.0, 0, 1); }) == ErrorCode::kInvalidConfig);
  const std::vector<LanePoint> flat = {{1, 3}, {2, 3}, {3, 4}};
  CHECK(code_of([&] { (void)fit_parabola_ransac(flat, 5.0, 30, 1); }) == ErrorCode::kRankDeficient);
  std::vector<LanePoint> crowded(5000, LanePoint{10, 1});
  crowded.push_back({11, 2});
  crowded.push_back({12, 3});
  CHECK(code_of([&] { (void)fit_parabola_ransac(crowded, 5.0, 1, 1); }) ==
        ErrorCode::kNoConsensus);
}

TEST_CASE("extraction config validation lists every problem") {
  ExtractionConfig c;
  c.residual_threshold = 0;
  c.max_lanes = 0;
  c.min_inlier_ratio = 1.5;
  c.ransac_iterations = 0;
  try {
    c.validate();
    FAIL("expected an Error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidConfig);
    const std::string msg = e.what();
    CHECK(msg.find("t_r") != std::string::npos);
    CHECK(msg.find("max_lanes") != std::string::npos);
    CHECK(msg.find("min_inlier_ratio") != std::string::npos);
    CHECK(msg.find("ransac_iterations") != std::string::npos);
  }
  CHECK(ExtractionConfig{}.epsilon_for(600) == doctest::Approx(0.55 * 599));
  CHECK(max_iterations(240, ExtractionConfig{}) == 15 + 4);
}

TEST_CASE("extract_lanes: two vertical zero-cost stripes") {
  graph::Grid<double> g(120, 200, 1.0);
  for (int v = 0; v < 200; ++v) {
    g.at(29, v) = 0.0;
    g.at(89, v) = 0.0;
  }
  const DetectionResult r = extract_lanes(g, ExtractionConfig{});
  REQUIRE(r.lanes.size() == 2);
  std::vector<double> c0;
  for (const auto& lane : r.lanes) {
    CHECK(std::abs(lane.coefficients.c2) < 1e-6);
    CHECK(lane.inlier_ratio == 1.0);
    c0.push_back(lane.coefficients(100));
  }
  std::sort(c0.begin(), c0.end());
  CHECK(std::abs(c0[0] - 30) <= 1.0);
  CHECK(std::abs(c0[1] - 90) <= 1.0);
}

TEST_CASE("extract_lanes: epsilon below the uniform path cost yields no lanes") {
  ExtractionConfig cfg;
  cfg.epsilon = 10.0;
  const DetectionResult r = extract_lanes(graph::Grid<double>(50, 30, 1.0), cfg);
  CHECK(r.lanes.empty());
  CHECK(r.iterations == 0);
}

TEST_CASE("extract_lanes: planted curve u = 0.002 v^2 + 0.5 v + 10") {
  const Parabola planted{0.002, 0.5, 10};
  const graph::Grid<double> g = stripe_grid(120, 100, planted, 0);
  // Its slope is >= 0.5 column per row, so any path that follows it pays at
  // least 0.5 * lambda per row in the regulariser alone; at lambda = 2 that
  // exceeds the 0.55 per-row stop budget and nothing is accepted.
  const DetectionResult strict = extract_lanes(g, ExtractionConfig{});
  CHECK(strict.lanes.empty());
  ExtractionConfig free;
  free.lambda = 0.0;
  const DetectionResult r = extract_lanes(g, free);
  REQUIRE(r.lanes.size() == 1);
  CHECK(std::abs(r.lanes[0].coefficients.c2 - planted.c2) < 5e-4);
  CHECK(std::abs(r.lanes[0].coefficients.c1 - planted.c1) < 0.05);
  CHECK(std::abs(r.lanes[0].coefficients.c0 - planted.c0) < 2.0);
}

TEST_CASE("extract_lanes: planted curve within the regulariser budget at lambda = 2") {
  const Parabola planted{0.0005, 0.05, 30};
  const DetectionResult r = extract_lanes(stripe_grid(100, 100, planted, 0), ExtractionConfig{});
  REQUIRE(r.lanes.size() == 1);
  CHECK(std::abs(r.lanes[0].coefficients.c2 - planted.c2) < 5e-4);
  CHECK(std::abs(r.lanes[0].coefficients.c1 - planted.c1) < 0.05);
  CHECK(std::abs(r.lanes[0].coefficients.c0 - planted.c0) < 2.0);
}

TEST_CASE("extract_lanes: loop invariants on noisy stripe fields") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> bg(0.6, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    graph::Grid<double> g(160, 150);
    for (auto& c : g.cells()) c = bg(rng);
    for (int s = 0; s < 3; ++s) {
      const int col = 20 + 55 * s + trial;
      for (int v = 0; v < 150; ++v) {
        if ((v / 12 + s) % 3 != 0) g.at(col + (v * s) / 75, v) = 0.05;
      }
    }
    ExtractionConfig cfg;
    cfg.seed = trial;
    const graph::PathTable table = graph::solve_dp(graph::build_graph(g, cfg.radius), cfg.lambda);
    const DetectionResult r = extract_lanes(table, cfg);
    CHECK(r.lanes.size() <= static_cast<std::size_t>(cfg.max_lanes));
    CHECK(r.iterations <= max_iterations(160, cfg));
    CHECK(r.iterations == r.lanes.size() + r.rejected_paths);
    for (std::size_t i = 0; i < r.lanes.size(); ++i) {
      const LaneModel& lane = r.lanes[i];
      CHECK(lane.inlier_ratio >= cfg.min_inlier_ratio);
      CHECK(lane.inlier_ratio <= 1.0);
      CHECK(lane.inlier_count <= 150);
      CHECK(lane.path_cost == table.cost(lane.destination));
      CHECK(lane.path_cost <= cfg.epsilon_for(150));
      std::size_t inliers = 0;
      for (const auto& p : to_points(r.paths[i])) {
        inliers += squared_residual(lane.coefficients, p) < cfg.residual_threshold;
      }
      CHECK(inliers == lane.inlier_count);
      for (std::size_t j = 0; j < i; ++j) {
        CHECK(std::abs(lane.destination.u - r.lanes[j].destination.u) > cfg.suppression_half_width);
        CHECK(path_overlap(r.paths[i], r.paths[j], cfg.suppression_half_width) < cfg.max_overlap);
      }
      REQUIRE(r.ipm_polylines[i].size() == 150);
      for (int v = 1; v <= 150; ++v) {
        const auto& pt = r.ipm_polylines[i][static_cast<std::size_t>(v - 1)];
        CHECK(std::abs(pt.x - (lane.coefficients(v) - 1.0)) < 0.5);
        CHECK(pt.y == 150 - v);
      }
    }
    const DetectionResult again = extract_lanes(table, cfg);
    REQUIRE(again.lanes.size() == r.lanes.size());
    for (std::size_t i = 0; i < r.lanes.size(); ++i) {
      CHECK(again.lanes[i].coefficients == r.lanes[i].coefficients);
    }
  }
}

TEST_CASE("extract_lanes: a duplicate path is rejected by the overlap rule") {
  // Lane at column 40; a second destination far away re-traces it through a
  // diagonal zero-cost spur near the top.
  graph::Grid<double> g(120, 200, 1.0);
  for (int v = 0; v < 200; ++v) g.at(39, v) = 0.0;
  for (int v = 150; v < 200; ++v) g.at(39 + (v - 150) / 2, v) = 0.0;
  const DetectionResult r = extract_lanes(g, ExtractionConfig{});
  CHECK(r.lanes.size() == 1);
  graph::Path a, b;
  for (int v = 1; v <= 10; ++v) {
    a.nodes.push_back({10, v});
    b.nodes.push_back({v <= 5 ? 12 : 30, v});
  }
  CHECK(path_overlap(b, a, 8) == 0.5);
}

TEST_CASE("detect: clean two-lane road") {
  const harness::SceneSpec spec = road({{0, 0, -1.7}, {0, 0, 1.7}});
  const cv::Mat image = harness::render_scene(spec);
  const geometry::CameraModel cam = harness::scene_camera(spec);
  const PipelineConfig cfg;
  PipelineArtifacts art;
  const DetectionResult r = detect(image, cam, cfg, &art);
  REQUIRE(r.lanes.size() == 2);
  const harness::GroundTruth truth =
      harness::make_ground_truth("road", {{0, 0, -1.7}, {0, 0, 1.7}}, cam, cfg.grid, 3);
  for (const auto& t : truth.lanes) {
    double best = INFINITY;
    for (const auto& lane : r.lanes) best = std::min(best, harness::lateral_error(lane.coefficients, t));
    CHECK(best <= 2.0);
  }
  CHECK(r.image_polylines.size() == 2);
  CHECK(art.cost.width() == 240);
  CHECK(art.cost.height() == 600);
  std::vector<std::string> stages;
  for (const auto& t : r.timings) stages.push_back(t.stage);
  CHECK(stages.size() >= 4);
}

TEST_CASE("detect: black image gives no lanes") {
  const harness::SceneSpec spec = road({});
  const cv::Mat black = cv::Mat::zeros(960, 1280, CV_8UC3);
  const DetectionResult r = detect(black, harness::scene_camera(spec), PipelineConfig{});
  CHECK(r.lanes.empty());
}

TEST_CASE("detect: curvature sign follows the planted lane") {
  for (double c2 : {0.002, -0.002}) {
    const std::vector<geometry::Parabola> ground = {{c2, 0, -1.7}, {c2, 0, 1.7}};
    const harness::SceneSpec spec = road(ground);
    const DetectionResult r =
        detect(harness::render_scene(spec), harness::scene_camera(spec), PipelineConfig{});
    REQUIRE(r.lanes.size() >= 1);
    for (const auto& lane : r.lanes) CHECK((lane.coefficients.c2 > 0) == (c2 > 0));
  }
}

}  // TEST_SUITE
