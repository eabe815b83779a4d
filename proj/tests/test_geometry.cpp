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

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <opencv2/core.hpp>

#include "doctest.h"
#include "lanegraph/error.hpp"
#include "lanegraph/geometry/camera.hpp"
#include "lanegraph/geometry/ipm.hpp"
#include "lanegraph/geometry/vp_estimator.hpp"
#include "lanegraph/harness/synth.hpp"
#include "lanegraph/features/features.hpp"
#include "lanegraph/lanes/parabola_fit.hpp"

using namespace lanegraph;
using namespace lanegraph::geometry;

namespace {

CameraModel road_camera(double pitch = 0.04, double yaw = -0.01) {
  return CameraModel({960, 960, 640, 480}, 1280, 960, 1.6, {pitch, yaw});
}

// Independent projection chain: camera-to-world rotation built from
// elementary rotations, then P = K [R | -R C] applied to homogeneous points.
Eigen::Matrix<double, 3, 4> explicit_projection(const CameraModel& cam) {
  const Attitude a = cam.attitude();
  const double euler_yaw = std::atan(std::tan(a.yaw) * std::cos(a.pitch));
  Eigen::Matrix3d rest;  // camera x -> X, y -> -Z, z -> Y
  rest << 1, 0, 0, 0, 0, 1, 0, -1, 0;
  const Eigen::Matrix3d cam_to_world =
      Eigen::AngleAxisd(euler_yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix() *
      Eigen::AngleAxisd(-a.pitch, Eigen::Vector3d::UnitX()).toRotationMatrix() * rest;
  const Eigen::Matrix3d r = cam_to_world.transpose();
  const Eigen::Vector3d centre(0, 0, cam.height());
  Eigen::Matrix<double, 3, 4> rt;
  rt.leftCols<3>() = r;
  rt.col(3) = -r * centre;
  return cam.K() * rt;
}

Eigen::Vector2d apply(const Eigen::Matrix3d& h, double x, double y) {
  const Eigen::Vector3d p = h * Eigen::Vector3d(x, y, 1.0);
  return p.hnormalized();
}

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

// Straight-down camera whose IPM pixel centres land on integer source
// pixels: 10 px per metre, 0.1 m per raster pixel.
CameraModel down_camera() {
  return CameraModel({100, 100, 31.5, 23.5}, 64, 48, 10.0, {std::numbers::pi / 2, 0.0});
}

std::vector<double> row_centroids(const cv::Mat& ipm, int lo_col, int hi_col) {
  std::vector<double> out;
  for (int r = 0; r < ipm.rows; ++r) {
    double sum = 0.0, weight = 0.0;
    for (int c = lo_col; c < hi_col; ++c) {
      const double w = std::max(0.0, ipm.at<std::uint8_t>(r, c) - 150.0);
      sum += w * c;
      weight += w;
    }
    out.push_back(weight > 0 ? sum / weight : std::nan(""));
  }
  return out;
}

harness::SceneSpec clean_scene(std::vector<Parabola> lanes) {
  harness::SceneSpec s;
  s.camera.intrinsics = {960, 960, 640, 480};
  s.camera.image_width = 1280;
  s.camera.image_height = 960;
  s.camera.height_m = 1.6;
  s.camera.pitch_rad = 0.04;
  s.camera.yaw_rad = 0.0;
  s.noise_sigma = 0.0;
  s.texture_amplitude = 0.0;
  for (const auto& p : lanes) s.lanes.push_back({p, 0.15});
  return s;
}

// Least-squares line fit of centroids (col = a * row + b); returns a.
double centroid_slope(const std::vector<double>& c, int first, int last) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int r = first; r <= last; ++r) {
    if (std::isnan(c[r])) continue;
    n += 1;
    sx += r;
    sy += c[r];
    sxx += static_cast<double>(r) * r;
    sxy += r * c[r];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("camera model validation and derived quantities") {
  const CameraModel cam = road_camera();
  CHECK(cam.half_angle_u() == doctest::Approx(std::atan(1280.0 / 1920.0)));
  CHECK(cam.half_angle_v() == doctest::Approx(std::atan(960.0 / 1920.0)));
  CHECK(cam.half_angle_u() > 0.0);
  CHECK(cam.half_angle_u() < std::numbers::pi / 2);
  const Eigen::Matrix3d k = cam.K();
  CHECK(k(1, 0) == 0.0);
  CHECK(k(2, 0) == 0.0);
  CHECK(k(2, 1) == 0.0);
  CHECK((cam.rotation() * cam.rotation().transpose() - Eigen::Matrix3d::Identity()).norm() <
        1e-12);
  CHECK(cam.rotation().determinant() == doctest::Approx(1.0));
  CHECK(code_of([] { CameraModel({0, 960, 640, 480}, 1280, 960, 1.6, {}); }) ==
        ErrorCode::kInvalidCamera);
  CHECK(code_of([] { CameraModel({960, 960, 640, 480}, 0, 960, 1.6, {}); }) ==
        ErrorCode::kInvalidCamera);
  CHECK(code_of([] { CameraModel({960, 960, 640, 480}, 1280, 960, 0.0, {}); }) ==
        ErrorCode::kInvalidCamera);
  CHECK(code_of([] { CameraModel({960, 960, 640, 480}, 1280, 960, 1.0, {NAN, 0}); }) ==
        ErrorCode::kInvalidCamera);
}

TEST_CASE("road direction vanishing point follows the attitude convention") {
  const CameraModel cam = road_camera(0.05, 0.03);
  const VanishingPoint vp = vanishing_point_of_world_direction(cam, {0, 1, 0});
  CHECK(vp.u == doctest::Approx(640 + 960 * std::tan(0.03)).epsilon(1e-12));
  CHECK(vp.v == doctest::Approx(480 - 960 * std::tan(0.05)).epsilon(1e-12));
}

TEST_CASE("vanishing_point_of_direction") {
  const CameraModel cam = road_camera();
  const VanishingPoint axis = vanishing_point_of_direction(cam, {0, 0, 1});
  CHECK(axis.u == 640.0);
  CHECK(axis.v == 480.0);
  CHECK(code_of([&] { (void)vanishing_point_of_direction(cam, {1, 0, 0}); }) ==
        ErrorCode::kDegenerateDirection);
  CHECK(code_of([&] { (void)vanishing_point_of_direction(cam, {0, 0, 0}); }) ==
        ErrorCode::kDegenerateDirection);
}

TEST_CASE("parallel lines converge to the vanishing point") {
  const CameraModel cam = road_camera(0.03, 0.02);
  const Eigen::Vector3d n = Eigen::Vector3d(0.1, 1.0, 0.02).normalized();
  const VanishingPoint vp = vanishing_point_of_world_direction(cam, n);
  const Eigen::Vector3d a(-1.7, 5.0, 0.0);
  const Eigen::Vector3d b(2.3, 8.0, 0.4);
  double previous = INFINITY;
  for (double t : {1e3, 1e4, 1e5, 1e6, 1e7}) {
    for (const auto& p0 : {a, b}) {
      const auto px = cam.project(p0 + t * n);
      REQUIRE(px.has_value());
      const double err = std::hypot(px->x() - vp.u, px->y() - vp.v);
      if (t == 1e7) CHECK(err < 1e-3);
    }
    const double err_a = (*cam.project(a + t * n) - Eigen::Vector2d(vp.u, vp.v)).norm();
    CHECK(err_a < previous);
    previous = err_a;
  }
}

TEST_CASE("angles_from_vp") {
  const CameraModel cam = road_camera(0.0, 0.0);
  const Attitude centred = angles_from_vp(cam, {640, 480});
  CHECK(centred.pitch == 0.0);
  CHECK(centred.yaw == 0.0);
  const Attitude top = angles_from_vp(cam, {640, 0});
  CHECK(top.pitch == doctest::Approx(cam.half_angle_v()).epsilon(1e-15));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(-0.26, 0.26);
  for (int i = 0; i < 200; ++i) {
    const Attitude planted{angle(rng), angle(rng)};
    const CameraModel c = cam.with_attitude(planted);
    const Attitude got = angles_from_vp(c, vanishing_point_of_world_direction(c, {0, 1, 0}));
    CHECK(std::abs(got.pitch - planted.pitch) < 1e-6);
    CHECK(std::abs(got.yaw - planted.yaw) < 1e-6);
  }
}

TEST_CASE("ipm_homography matches the explicit projection chain") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> x(-6, 6), y(4, 34), angle(-0.26, 0.26);
  for (int c = 0; c < 10; ++c) {
    const CameraModel cam = road_camera(angle(rng), angle(rng));
    const Eigen::Matrix3d h = ipm_homography(cam);
    const Eigen::Matrix<double, 3, 4> p = explicit_projection(cam);
    for (int i = 0; i < 20; ++i) {
      const Eigen::Vector4d world(x(rng), y(rng), 0.0, 1.0);
      const Eigen::Vector2d expected = (p * world).hnormalized();
      const Eigen::Vector2d got = apply(h, world.x(), world.y());
      CHECK((got - expected).norm() <= 1e-9 * expected.norm());
      const Eigen::Vector2d back = apply(h.inverse(), got.x(), got.y());
      CHECK((back - world.head<2>()).norm() < 1e-6);
    }
  }
}

TEST_CASE("ground points straight ahead of a level camera project to the principal column") {
  const CameraModel cam = road_camera(0.0, 0.0);
  const Eigen::Matrix3d h = ipm_homography(cam);
  for (double y : {2.0, 10.0, 50.0}) CHECK(apply(h, 0.0, y).x() == doctest::Approx(640.0));
}

TEST_CASE("degenerate camera height makes the homography singular") {
  const CameraModel flat({960, 960, 640, 480}, 1280, 960, 1e-14, {0.0, 0.0});
  CHECK(code_of([&] { (void)ipm_homography(flat); }) == ErrorCode::kSingularHomography);
}

TEST_CASE("ipm grid coordinates") {
  const IpmGrid grid;
  CHECK(grid.scale_x() == doctest::Approx(0.05));
  CHECK(grid.scale_y() == doctest::Approx(0.05));
  const Eigen::Vector2d g = grid.ground_of_graph(37.25, 412.5);
  const Eigen::Vector2d back = grid.graph_of_ground(g.x(), g.y());
  CHECK(back.x() == doctest::Approx(37.25));
  CHECK(back.y() == doctest::Approx(412.5));
  const Eigen::Vector2d r = grid.raster_of_graph(1, 1);
  CHECK(r.x() == 0.0);
  CHECK(r.y() == 599.0);
  const Eigen::Vector2d a = grid.ground_of_pixel(0, 599);
  CHECK(a.x() == doctest::Approx(grid.ground_of_graph(1, 1).x()));
  CHECK(a.y() == doctest::Approx(grid.ground_of_graph(1, 1).y()));
  const Parabola ground{0.002, -0.03, 1.2};
  const Parabola ipm = ground_to_graph(grid, ground);
  for (double v : {1.0, 100.0, 333.0, 600.0}) {
    const Eigen::Vector2d p = grid.ground_of_graph(ipm(v), v);
    CHECK(p.x() == doctest::Approx(ground(p.y())).epsilon(1e-12));
  }
  IpmGrid bad;
  bad.out_width = 0;
  bad.y_range_m = -1;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidConfig);
}

TEST_CASE("warp_to_ipm: straight-down camera gives a scaled crop") {
  cv::Mat image(48, 64, CV_8UC1);
  cv::randu(image, 0, 256);
  IpmGrid full{6.4, 4.8, -2.4, 64, 48};
  CHECK(cv::norm(warp_to_ipm(image, down_camera(), full), image, cv::NORM_INF) == 0.0);
  IpmGrid crop{3.2, 2.4, -1.2, 32, 24};
  const cv::Mat expected = image(cv::Rect(16, 12, 32, 24));
  CHECK(cv::norm(warp_to_ipm(image, down_camera(), crop), expected, cv::NORM_INF) == 0.0);
  IpmGrid half_res{6.4, 4.8, -2.4, 32, 24};
  const cv::Mat coarse = warp_to_ipm(image, down_camera(), half_res);
  for (int r = 0; r < 24; ++r) {
    for (int c = 0; c < 32; ++c) {
      const double expected_value = 0.25 * (image.at<std::uint8_t>(2 * r, 2 * c) +
                                            image.at<std::uint8_t>(2 * r, 2 * c + 1) +
                                            image.at<std::uint8_t>(2 * r + 1, 2 * c) +
                                            image.at<std::uint8_t>(2 * r + 1, 2 * c + 1));
      CHECK(std::abs(coarse.at<std::uint8_t>(r, c) - expected_value) <= 0.5 + 1e-9);
    }
  }
}

TEST_CASE("warp_to_ipm: zero input, zero fill and coverage") {
  const CameraModel cam = road_camera();
  const IpmGrid grid;
  const cv::Mat black = cv::Mat::zeros(960, 1280, CV_8UC1);
  CHECK(cv::countNonZero(warp_to_ipm(black, cam, grid)) == 0);
  const cv::Mat white(960, 1280, CV_8UC1, cv::Scalar(255));
  const cv::Mat warped = warp_to_ipm(white, cam, grid);
  const cv::Mat coverage = ipm_coverage(cam, grid);
  CHECK(cv::countNonZero(coverage) > 0);
  CHECK(cv::countNonZero(coverage) < grid.out_width * grid.out_height);
  CHECK(cv::norm(warped == 255, coverage * 255, cv::NORM_INF) == 0.0);
  CHECK(code_of([&] { (void)warp_to_ipm(cv::Mat(), cam, grid); }) ==
        ErrorCode::kUnsupportedFormat);
  CHECK(code_of([&] { (void)warp_to_ipm(cv::Mat(4, 4, CV_8UC3), cam, grid); }) ==
        ErrorCode::kUnsupportedFormat);
}

TEST_CASE("warp keeps parallel ground lines parallel and vertical") {
  const harness::SceneSpec spec = clean_scene({{0, 0, -1.75}, {0, 0, 1.75}});
  const cv::Mat gray = features::to_grayscale(harness::render_scene(spec));
  const CameraModel cam = harness::scene_camera(spec);
  const IpmGrid grid;
  const cv::Mat ipm = warp_to_ipm(gray, cam, grid);
  const auto left = row_centroids(ipm, 60, 110);
  const auto right = row_centroids(ipm, 130, 180);
  const double expected_left = grid.graph_of_ground(-1.75, 0).x() - 1.0;
  const double expected_right = grid.graph_of_ground(1.75, 0).x() - 1.0;
  for (int r = 0; r < grid.out_height; ++r) {
    CHECK(std::abs(left[r] - expected_left) < 1.0);
    CHECK(std::abs(right[r] - expected_right) < 1.0);
  }
  const double sl = centroid_slope(left, 0, grid.out_height - 1);
  const double sr = centroid_slope(right, 0, grid.out_height - 1);
  CHECK(std::abs(sl - sr) < 0.01);
  CHECK(std::abs(sl) < 0.01);
}

TEST_CASE("project_lane_to_image") {
  IpmGrid grid{6.4, 4.8, -2.4, 64, 48};
  const std::vector<cv::Point2d> line = project_lane_to_image({0, 0, 32.5}, down_camera(), grid);
  REQUIRE(line.size() == 48);
  for (const auto& p : line) CHECK(p.x == doctest::Approx(31.5));

  IpmGrid behind;
  behind.y_start_m = -60.0;
  behind.y_range_m = 20.0;
  CHECK(project_lane_to_image({0, 0, 120}, road_camera(), behind).empty());
}

TEST_CASE("round trip: painted parabola -> image -> IPM -> fit -> image endpoints") {
  const Parabola ground{0.0015, 0.0, -1.6};
  const harness::SceneSpec spec = clean_scene({ground});
  const cv::Mat gray = features::to_grayscale(harness::render_scene(spec));
  const CameraModel cam = harness::scene_camera(spec);
  const IpmGrid grid;
  const cv::Mat ipm = warp_to_ipm(gray, cam, grid);
  const auto centres = row_centroids(ipm, 0, grid.out_width);
  std::vector<lanes::LanePoint> pts;
  for (int r = 0; r < grid.out_height; ++r) {
    if (!std::isnan(centres[r])) pts.push_back({centres[r] + 1.0, double(grid.out_height - r)});
  }
  REQUIRE(pts.size() > 500);
  const Parabola fitted = lanes::fit_parabola_ls(pts);
  const auto got = project_lane_to_image(fitted, cam, grid);
  const auto expected = project_lane_to_image(ground_to_graph(grid, ground), cam, grid);
  REQUIRE(got.size() >= 2);
  REQUIRE(expected.size() >= 2);
  CHECK(cv::norm(got.front() - expected.front()) < 2.0);
  CHECK(cv::norm(got.back() - expected.back()) < 2.0);
}

TEST_CASE("fallback vanishing point estimator is best effort") {
  const harness::SceneSpec spec = clean_scene({{0, 0, -1.75}, {0, 0, 1.75}});
  const cv::Mat gray = features::to_grayscale(harness::render_scene(spec));
  const auto vp = estimate_vanishing_point(gray);
  REQUIRE(vp.has_value());
  const VanishingPoint truth =
      vanishing_point_of_world_direction(harness::scene_camera(spec), {0, 1, 0});
  CHECK(std::hypot(vp->u - truth.u, vp->v - truth.v) < 20.0);
  CHECK_FALSE(estimate_vanishing_point(cv::Mat::zeros(480, 640, CV_8UC1)).has_value());
}

}  // TEST_SUITE
