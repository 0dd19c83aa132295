#include "dcpose/geom/pose.hpp"

#include <cmath>
#include <random>

#include "dcpose/errors.hpp"

namespace dcpose {

namespace {

void check_rotation(const Mat3& R, double tol) {
  const double ortho = (R.transpose() * R - Mat3::Identity()).norm();
  if (ortho > tol || std::abs(R.determinant() - 1.0) > tol) {
    throw NotARotation("matrix is not orthonormal with determinant +1");
  }
}

}  // namespace

Pose::Pose(const Mat3& R_, const Vec3& t_) : R(R_), t(t_) {
  check_rotation(R, 1e-9);
}

UnitQuaternion::UnitQuaternion(double w_, double x_, double y_, double z_)
    : w(w_), x(x_), y(y_), z(z_) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (n < 1e-12) throw NotARotation("zero quaternion");
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  if (w < 0.0) {
    w = -w;
    x = -x;
    y = -y;
    z = -z;
  }
}

UnitQuaternion quat_of(const Mat3& R) {
  check_rotation(R, 1e-6);
  Eigen::Quaterniond q(R);
  q.normalize();
  return UnitQuaternion(q.w(), q.x(), q.y(), q.z());
}

Mat3 rotation_of(const UnitQuaternion& q) {
  Eigen::Quaterniond eq(q.w, q.x, q.y, q.z);
  const double n = eq.norm();
  if (n < 1e-12) throw NotARotation("zero quaternion");
  eq.normalize();
  return eq.toRotationMatrix();
}

Mat3 skew(const Vec3& a) {
  Mat3 S;
  S << 0.0, -a.z(), a.y(), a.z(), 0.0, -a.x(), -a.y(), a.x(), 0.0;
  return S;
}

Mat3 exp_so3(const Vec3& w) {
  const double theta = w.norm();
  if (theta < 1e-12) {
    // Second-order series keeps the result orthonormal to machine precision.
    const Mat3 S = skew(w);
    return Mat3::Identity() + S + 0.5 * S * S;
  }
  const Vec3 axis = w / theta;
  return Eigen::AngleAxisd(theta, axis).toRotationMatrix();
}

Pose perturb(const Pose& P, const Vec6& delta) {
  Pose out;
  out.R = P.R * exp_so3(delta.head<3>());
  // Re-orthonormalize so long perturbation chains cannot drift.
  Eigen::Quaterniond q(out.R);
  q.normalize();
  out.R = q.toRotationMatrix();
  out.t = P.t + delta.tail<3>();
  return out;
}

Mat3 random_rotation(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Quaterniond q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
  while (q.norm() < 1e-6) {
    q = Eigen::Quaterniond(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
  }
  q.normalize();
  return q.toRotationMatrix();
}

}  // namespace dcpose
