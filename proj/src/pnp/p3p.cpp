#include "dcpose/pnp/p3p.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace dcpose {

namespace {

// Coefficient convolution: (sum a_i x^i) * (sum b_j x^j).
std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> poly_add(std::vector<double> a,
                             const std::vector<double>& b, double scale) {
  if (b.size() > a.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
  return a;
}

// Rigid alignment mapping src points onto dst points (least squares).
Pose align_rigid(const std::array<Vec3, 3>& src, const std::array<Vec3, 3>& dst) {
  Eigen::Matrix3d S, D;
  for (int i = 0; i < 3; ++i) {
    S.col(i) = src[i];
    D.col(i) = dst[i];
  }
  const Mat4 T = Eigen::umeyama(S, D, /*with_scaling=*/false);
  Pose pose;
  pose.R = T.topLeftCorner<3, 3>();
  // umeyama can drift from orthonormality at the 1e-12 level; snap back.
  Eigen::Quaterniond q(pose.R);
  q.normalize();
  pose.R = q.toRotationMatrix();
  pose.t = T.topRightCorner<3, 1>();
  return pose;
}

}  // namespace

std::vector<double> real_roots(const std::vector<double>& coeffs) {
  // Trim the leading (highest-degree) zeros.
  int degree = static_cast<int>(coeffs.size()) - 1;
  while (degree > 0 && std::abs(coeffs[degree]) < 1e-14) --degree;
  std::vector<double> out;
  if (degree < 1) return out;
  if (degree == 1) {
    out.push_back(-coeffs[0] / coeffs[1]);
    return out;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 0; i < degree; ++i) {
    companion(0, i) = -coeffs[degree - 1 - i] / coeffs[degree];
    if (i + 1 < degree) companion(i + 1, i) = 1.0;
  }
  const Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
  for (int i = 0; i < degree; ++i) {
    const auto root = es.eigenvalues()[i];
    if (std::abs(root.imag()) < 1e-8 * (1.0 + std::abs(root.real()))) {
      out.push_back(root.real());
    }
  }
  return out;
}

std::vector<Pose> solve_p3p(const std::array<Vec3, 3>& model,
                            const std::array<Vec3, 3>& rays) {
  std::vector<Pose> poses;

  const double a = (model[1] - model[2]).norm();  // opposite point 0
  const double b = (model[0] - model[2]).norm();  // opposite point 1
  const double c = (model[0] - model[1]).norm();  // opposite point 2
  if (a < 1e-12 || b < 1e-12 || c < 1e-12) return poses;

  const Vec3 j0 = rays[0].normalized();
  const Vec3 j1 = rays[1].normalized();
  const Vec3 j2 = rays[2].normalized();
  const double cos_a = j1.dot(j2);
  const double cos_b = j0.dot(j2);
  const double cos_g = j0.dot(j1);

  // Distances s0, s1 = u s0, s2 = v s0 satisfy three law-of-cosines
  // relations; eliminating s0 and u leaves a quartic in v.
  const double A = (a * a) / (b * b);
  const double B = (c * c) / (b * b);

  // X(v) = 1 + v^2 - 2 v cos_b, so s0^2 X = b^2.
  const std::vector<double> X = {1.0, -2.0 * cos_b, 1.0};
  // num(v) = (A - B) X + 1 - v^2, den(v) = 2 (cos_g - v cos_a), with
  // u = num / den from the difference of the other two relations.
  std::vector<double> num = poly_add({1.0, 0.0, -1.0}, X, A - B);
  const std::vector<double> den = {2.0 * cos_g, -2.0 * cos_a};
  // Substituting u into u^2 - 2 u cos_g + (1 - B X) = 0:
  std::vector<double> quartic = poly_mul(num, num);
  quartic = poly_add(quartic, poly_mul(num, den), -2.0 * cos_g);
  std::vector<double> one_minus_BX = poly_add({1.0}, X, -B);
  quartic = poly_add(quartic, poly_mul(poly_mul(den, den), one_minus_BX), 1.0);

  for (const double v : real_roots(quartic)) {
    if (v <= 0.0) continue;
    const double Xv = 1.0 + v * v - 2.0 * v * cos_b;
    if (Xv <= 1e-14) continue;
    const double s0 = b / std::sqrt(Xv);
    const double den_v = 2.0 * (cos_g - v * cos_a);
    if (std::abs(den_v) < 1e-12) continue;
    const double num_v = (A - B) * Xv + 1.0 - v * v;
    const double u = num_v / den_v;
    if (u <= 0.0) continue;
    const std::array<Vec3, 3> cam = {s0 * j0, u * s0 * j1, v * s0 * j2};
    Pose pose = align_rigid(model, cam);
    // Keep only solutions that actually reproduce the three points.
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      worst = std::max(worst, (pose.apply(model[i]) - cam[i]).norm());
    }
    if (worst < 1e-6 * (1.0 + s0)) poses.push_back(pose);
  }
  return poses;
}

}  // namespace dcpose
