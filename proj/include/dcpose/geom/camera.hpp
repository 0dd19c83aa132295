#pragma once

#include "dcpose/geom/pose.hpp"
#include "dcpose/types.hpp"

namespace dcpose {

// Pinhole camera, no distortion. Pixel coordinates follow the image
// convention: u right, v down, origin at the top-left pixel center.
struct CameraIntrinsics {
  double fx = 0.0, fy = 0.0, cx = 0.0, cy = 0.0;
  int width = 0, height = 0;
};

// Perspective projection of a camera-frame point. Throws NonPositiveDepth
// if z <= 1e-12.
Vec2 project(const CameraIntrinsics& K, const Vec3& x_cam);

// Projection of a model-frame point through a pose.
Vec2 project(const CameraIntrinsics& K, const Pose& P, const Vec3& x_model);

// 2x3 Jacobian of project() with respect to the camera-frame point.
Eigen::Matrix<double, 2, 3> project_jacobian(const CameraIntrinsics& K,
                                             const Vec3& x_cam);

// Ray direction (unit z) through pixel (u, v): ((u-cx)/fx, (v-cy)/fy, 1).
Vec3 backproject(const CameraIntrinsics& K, const Vec2& uv);

// Intrinsics of a square crop of side `side` pixels centered at `center`
// (full-image pixel coordinates), resampled to out_size x out_size. Points
// project through the crop camera exactly where the resampled crop shows
// them.
CameraIntrinsics crop_intrinsics(const CameraIntrinsics& K, const Vec2& center,
                                 double side, int out_size);

}  // namespace dcpose
