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

#include "lanegraph/geometry/camera.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "lanegraph/error.hpp"

namespace lanegraph::geometry {
namespace {

// Rows are the camera x (right), y (down) and z (forward) axes expressed in
// world coordinates. The Euler yaw about world Z is chosen so that the road
// direction's image slope equals tan(yaw) exactly, with the pitch applied
// about the camera's lateral axis.
Eigen::Matrix3d rotation_from_attitude(const Attitude& a) {
  const double sb = std::sin(a.pitch);
  const double cb = std::cos(a.pitch);
  const double euler_yaw = std::atan(std::tan(a.yaw) * cb);
  const double sg = std::sin(euler_yaw);
  const double cg = std::cos(euler_yaw);
  Eigen::Matrix3d r;
  r << cg, sg, 0.0,                // right
      sb * sg, -sb * cg, -cb,      // down
      -sg * cb, cg * cb, -sb;      // forward
  return r;
}

}  // namespace

CameraModel::CameraModel(const Intrinsics& intrinsics, int image_width, int image_height,
                         double height_m, Attitude attitude)
    : intrinsics_(intrinsics),
      image_width_(image_width),
      image_height_(image_height),
      height_(height_m),
      attitude_(attitude),
      rotation_(rotation_from_attitude(attitude)) {
  if (!(intrinsics.fx > 0.0) || !(intrinsics.fy > 0.0)) {
    throw Error(ErrorCode::kInvalidCamera, "focal lengths must be positive");
  }
  if (image_width <= 0 || image_height <= 0) {
    throw Error(ErrorCode::kInvalidCamera, "image size must be positive");
  }
  if (!(height_m > 0.0)) {
    throw Error(ErrorCode::kInvalidCamera,
                "camera height must be positive, got " + std::to_string(height_m));
  }
  if (!std::isfinite(attitude.pitch) || !std::isfinite(attitude.yaw)) {
    throw Error(ErrorCode::kInvalidCamera, "attitude angles must be finite");
  }
}

double CameraModel::half_angle_u() const noexcept {
  return std::atan(image_width_ / (2.0 * intrinsics_.fx));
}

double CameraModel::half_angle_v() const noexcept {
  return std::atan(image_height_ / (2.0 * intrinsics_.fy));
}

Eigen::Matrix3d CameraModel::K() const {
  Eigen::Matrix3d k;
  k << intrinsics_.fx, 0.0, intrinsics_.cu,
      0.0, intrinsics_.fy, intrinsics_.cv,
      0.0, 0.0, 1.0;
  return k;
}

Eigen::Vector3d CameraModel::world_to_camera(const Eigen::Vector3d& world) const {
  return rotation_ * (world + translation());
}

std::optional<Eigen::Vector2d> CameraModel::project(const Eigen::Vector3d& world) const {
  const Eigen::Vector3d cam = world_to_camera(world);
  if (cam.z() <= 0.0) return std::nullopt;
  const Eigen::Vector3d p = K() * cam;
  return Eigen::Vector2d(p.x() / p.z(), p.y() / p.z());
}

CameraModel CameraModel::with_attitude(Attitude attitude) const {
  return CameraModel(intrinsics_, image_width_, image_height_, height_, attitude);
}

VanishingPoint vanishing_point_of_direction(const CameraModel& camera, const Eigen::Vector3d& n) {
  constexpr double kParallelTolerance = 1e-9;
  const double norm = n.norm();
  if (!(norm > 0.0) || std::abs(n.z()) < kParallelTolerance * norm) {
    throw Error(ErrorCode::kDegenerateDirection,
                "direction is parallel to the image plane; no finite vanishing point");
  }
  const Eigen::Vector3d p = camera.K() * n;
  return {p.x() / p.z(), p.y() / p.z()};
}

VanishingPoint vanishing_point_of_world_direction(const CameraModel& camera,
                                                  const Eigen::Vector3d& world_direction) {
  return vanishing_point_of_direction(camera, camera.rotation() * world_direction);
}

Attitude angles_from_vp(const CameraModel& camera, const VanishingPoint& vp) {
  const double width = camera.image_width();
  const double height = camera.image_height();
  Attitude a;
  a.pitch = std::atan(std::tan(camera.half_angle_v()) * (1.0 - 2.0 * vp.v / height));
  a.yaw = std::atan(std::tan(camera.half_angle_u()) * (2.0 * vp.u / width - 1.0));
  return a;
}

Eigen::Matrix3d ipm_homography(const CameraModel& camera) {
  // K [R | R t] restricted to Z = 0: columns r1, r2 and R t.
  const Eigen::Matrix3d& r = camera.rotation();
  Eigen::Matrix3d m;
  m.col(0) = r.col(0);
  m.col(1) = r.col(1);
  m.col(2) = r * camera.translation();
  const Eigen::Matrix3d h = camera.K() * m;
  // Scale-free singularity test: det relative to the cube of the Frobenius norm.
  const double scale = h.norm();
  if (!(scale > 0.0) || std::abs(h.determinant()) < 1e-12 * scale * scale * scale) {
    throw Error(ErrorCode::kSingularHomography, "ground-to-image homography is singular");
  }
  return h;
}

}  // namespace lanegraph::geometry
