#include "dcpose/geom/camera.hpp"

#include "dcpose/errors.hpp"

namespace dcpose {

Vec2 project(const CameraIntrinsics& K, const Vec3& x_cam) {
  if (x_cam.z() <= 1e-12) {
    throw NonPositiveDepth("point at or behind the camera plane");
  }
  return Vec2(K.fx * x_cam.x() / x_cam.z() + K.cx,
              K.fy * x_cam.y() / x_cam.z() + K.cy);
}

Vec2 project(const CameraIntrinsics& K, const Pose& P, const Vec3& x_model) {
  return project(K, P.apply(x_model));
}

Eigen::Matrix<double, 2, 3> project_jacobian(const CameraIntrinsics& K,
                                             const Vec3& x_cam) {
  if (x_cam.z() <= 1e-12) {
    throw NonPositiveDepth("point at or behind the camera plane");
  }
  const double iz = 1.0 / x_cam.z();
  Eigen::Matrix<double, 2, 3> J;
  J << K.fx * iz, 0.0, -K.fx * x_cam.x() * iz * iz,
       0.0, K.fy * iz, -K.fy * x_cam.y() * iz * iz;
  return J;
}

Vec3 backproject(const CameraIntrinsics& K, const Vec2& uv) {
  return Vec3((uv.x() - K.cx) / K.fx, (uv.y() - K.cy) / K.fy, 1.0);
}

CameraIntrinsics crop_intrinsics(const CameraIntrinsics& K, const Vec2& center,
                                 double side, int out_size) {
  // Crop spans [center - side/2, center + side/2] in source pixels and is
  // resampled to out_size: u' = (u - u0) * scale with u0 = cx_crop corner.
  const double scale = static_cast<double>(out_size) / side;
  CameraIntrinsics out;
  out.fx = K.fx * scale;
  out.fy = K.fy * scale;
  out.cx = (K.cx - (center.x() - side / 2.0)) * scale;
  out.cy = (K.cy - (center.y() - side / 2.0)) * scale;
  out.width = out_size;
  out.height = out_size;
  return out;
}

}  // namespace dcpose
