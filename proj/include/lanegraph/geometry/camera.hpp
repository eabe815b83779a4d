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

#ifndef LANEGRAPH_GEOMETRY_CAMERA_HPP_
#define LANEGRAPH_GEOMETRY_CAMERA_HPP_

#include <optional>

#include <Eigen/Core>

namespace lanegraph::geometry {

// World frame: X lateral (right positive), Y forward, Z up; the ground is
// Z = 0 and the camera sits at (0, 0, h). Camera frame: x right, y down,
// z along the optical axis. Image pixel centres are at integer coordinates.
//
// Attitude is given as pitch and yaw of the road direction (world +Y) as
// seen by the camera: the vanishing point of +Y lies at
//   u = cu + fu * tan(yaw),  v = cv - fv * tan(pitch).
// Positive pitch tilts the camera toward the ground; positive yaw places
// the road's vanishing point right of the principal point. Roll is zero:
// the camera's x axis stays parallel to the ground.

struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cu = 0.0;
  double cv = 0.0;

  friend bool operator==(const Intrinsics&, const Intrinsics&) = default;
};

struct VanishingPoint {
  double u = 0.0;
  double v = 0.0;
};

struct Attitude {
  double pitch = 0.0;  // radians
  double yaw = 0.0;    // radians
};

class CameraModel {
 public:
  // Throws kInvalidCamera on non-positive focal lengths, image size or height.
  CameraModel(const Intrinsics& intrinsics, int image_width, int image_height, double height_m,
              Attitude attitude);

  const Intrinsics& intrinsics() const noexcept { return intrinsics_; }
  int image_width() const noexcept { return image_width_; }
  int image_height() const noexcept { return image_height_; }
  double height() const noexcept { return height_; }
  const Attitude& attitude() const noexcept { return attitude_; }

  // Half of the horizontal / vertical field of view.
  double half_angle_u() const noexcept;
  double half_angle_v() const noexcept;

  Eigen::Matrix3d K() const;
  // World-to-camera rotation.
  const Eigen::Matrix3d& rotation() const noexcept { return rotation_; }
  // Translation applied before the rotation: P_cam = R (P + t), t = (0, 0, -h).
  Eigen::Vector3d translation() const { return {0.0, 0.0, -height_}; }

  Eigen::Vector3d world_to_camera(const Eigen::Vector3d& world) const;
  // Pixel of a world point, or nullopt when it lies behind the camera.
  std::optional<Eigen::Vector2d> project(const Eigen::Vector3d& world) const;

  CameraModel with_attitude(Attitude attitude) const;

 private:
  Intrinsics intrinsics_;
  int image_width_;
  int image_height_;
  double height_;
  Attitude attitude_;
  Eigen::Matrix3d rotation_;
};

// Dehomogenised K * n for a camera-frame direction n. Throws
// kDegenerateDirection when n is (numerically) parallel to the image plane.
VanishingPoint vanishing_point_of_direction(const CameraModel& camera, const Eigen::Vector3d& n);

// Vanishing point of a world-frame direction.
VanishingPoint vanishing_point_of_world_direction(const CameraModel& camera,
                                                  const Eigen::Vector3d& world_direction);

//   pitch = atan(tan(alpha_v) * (1 - 2 v_vp / V))
//   yaw   = atan(tan(alpha_u) * (2 u_vp / U - 1))
// Exact inverse of the forward-direction vanishing point when the principal
// point is the image centre.
Attitude angles_from_vp(const CameraModel& camera, const VanishingPoint& vp);

// Ground-plane homography: pixel ~ H * [X, Y, 1]^T. Throws
// kSingularHomography for degenerate configurations.
Eigen::Matrix3d ipm_homography(const CameraModel& camera);

}  // namespace lanegraph::geometry

#endif  // LANEGRAPH_GEOMETRY_CAMERA_HPP_
