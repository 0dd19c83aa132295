#pragma once

#include <Eigen/Geometry>

#include "dcpose/types.hpp"

namespace dcpose {

// Rigid transform from model frame to camera frame: x_cam = R * x_model + t.
// R is kept orthonormal with det +1; construction validates to 1e-9.
struct Pose {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();

  Pose() = default;
  Pose(const Mat3& R_, const Vec3& t_);

  Vec3 apply(const Vec3& x) const { return R * x + t; }
  Pose inverse() const { return Pose(R.transpose(), -(R.transpose() * t)); }

  // Composition: (a * b).apply(x) == a.apply(b.apply(x)).
  friend Pose operator*(const Pose& a, const Pose& b) {
    return Pose(a.R * b.R, a.R * b.t + a.t);
  }
};

// Unit quaternion with non-negative scalar part. Storage order (w, x, y, z).
struct UnitQuaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  UnitQuaternion() = default;
  UnitQuaternion(double w_, double x_, double y_, double z_);

  Vec4 coeffs_wxyz() const { return Vec4(w, x, y, z); }
};

// Rotation matrix -> unit quaternion (w >= 0). Throws NotARotation if the
// input is not orthonormal with det +1 to within 1e-6.
UnitQuaternion quat_of(const Mat3& R);

// Unit quaternion -> rotation matrix. Input is renormalized first; throws
// NotARotation on a near-zero quaternion.
Mat3 rotation_of(const UnitQuaternion& q);

// Matrix exponential of the cross-product matrix of w (Rodrigues).
Mat3 exp_so3(const Vec3& w);

// Cross-product (hat) matrix: skew(a) * b == a.cross(b).
Mat3 skew(const Vec3& a);

// Local chart at P: delta = (w, dt) with the rotation update applied in the
// body frame, R' = R * exp_so3(w), and the translation additive in the
// camera frame, t' = t + dt. perturb(P, 0) == P.
Pose perturb(const Pose& P, const Vec6& delta);

// Random rotation uniform over SO(3), from a uniformly random unit quaternion.
Mat3 random_rotation(std::uint64_t seed);

}  // namespace dcpose
