#include "dcpose/pnp/epnp.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>

namespace dcpose {

namespace {

using Vec10 = Eigen::Matrix<double, 10, 1>;
using Mat6x10 = Eigen::Matrix<double, 6, 10>;
using Vec12 = Eigen::Matrix<double, 12, 1>;

// Index pairs of the six control-point distances.
constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

// Products [b1b1, b1b2, b2b2, b1b3, b2b3, b3b3, b1b4, b2b4, b3b4, b4b4].
Vec10 beta_products(const Vec4& b) {
  Vec10 p;
  p << b[0] * b[0], b[0] * b[1], b[1] * b[1], b[0] * b[2], b[1] * b[2],
      b[2] * b[2], b[0] * b[3], b[1] * b[3], b[2] * b[3], b[3] * b[3];
  return p;
}

void gauss_newton_betas(const Mat6x10& L, const Vec6& rho, Vec4& betas) {
  for (int iter = 0; iter < 5; ++iter) {
    Eigen::Matrix<double, 6, 4> J;
    for (int r = 0; r < 6; ++r) {
      // d(L row . beta_products)/d(beta_k)
      const auto& l = L.row(r);
      J(r, 0) = 2 * l[0] * betas[0] + l[1] * betas[1] + l[3] * betas[2] +
                l[6] * betas[3];
      J(r, 1) = l[1] * betas[0] + 2 * l[2] * betas[1] + l[4] * betas[2] +
                l[7] * betas[3];
      J(r, 2) = l[3] * betas[0] + l[4] * betas[1] + 2 * l[5] * betas[2] +
                l[8] * betas[3];
      J(r, 3) = l[6] * betas[0] + l[7] * betas[1] + l[8] * betas[2] +
                2 * l[9] * betas[3];
    }
    const Vec6 residual = L * beta_products(betas) - rho;
    const Vec4 delta =
        (J.transpose() * J)
            .ldlt()
            .solve(J.transpose() * (-residual));
    betas += delta;
  }
}

}  // namespace

bool solve_epnp(const std::vector<Vec3>& model, const std::vector<Vec2>& pixels,
                const CameraIntrinsics& K, Pose& out) {
  const std::size_t n = model.size();
  if (n < 4 || pixels.size() != n) return false;

  // Control points: centroid plus principal axes scaled by the spread.
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : model) centroid += p;
  centroid /= static_cast<double>(n);
  Mat3 cov = Mat3::Zero();
  for (const auto& p : model) {
    const Vec3 d = p - centroid;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(n);
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  if (eig.info() != Eigen::Success) return false;
  // Ascending eigenvalues; reject near-planar sets, the barycentric basis
  // would be ill-conditioned.
  if (eig.eigenvalues()[0] < 1e-10 * std::max(eig.eigenvalues()[2], 1e-300)) {
    return false;
  }
  std::array<Vec3, 4> cw;
  cw[0] = centroid;
  for (int i = 0; i < 3; ++i) {
    cw[i + 1] =
        centroid + std::sqrt(eig.eigenvalues()[2 - i]) * eig.eigenvectors().col(2 - i);
  }

  Mat3 basis;
  for (int i = 0; i < 3; ++i) basis.col(i) = cw[i + 1] - cw[0];
  const Mat3 basis_inv = basis.inverse();

  Eigen::MatrixXd alphas(n, 4);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 b = basis_inv * (model[i] - cw[0]);
    alphas(i, 1) = b[0];
    alphas(i, 2) = b[1];
    alphas(i, 3) = b[2];
    alphas(i, 0) = 1.0 - b.sum();
  }

  Eigen::MatrixXd M(2 * n, 12);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double a = alphas(i, j);
      M(2 * i, 3 * j + 0) = a * K.fx;
      M(2 * i, 3 * j + 1) = 0.0;
      M(2 * i, 3 * j + 2) = a * (K.cx - pixels[i].x());
      M(2 * i + 1, 3 * j + 0) = 0.0;
      M(2 * i + 1, 3 * j + 1) = a * K.fy;
      M(2 * i + 1, 3 * j + 2) = a * (K.cy - pixels[i].y());
    }
  }

  const Eigen::Matrix<double, 12, 12> MtM = M.transpose() * M;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 12, 12>> es(MtM);
  if (es.info() != Eigen::Success) return false;
  std::array<Vec12, 4> v;
  for (int i = 0; i < 4; ++i) v[i] = es.eigenvectors().col(i);  // ascending

  Mat6x10 L;
  Vec6 rho;
  for (int r = 0; r < 6; ++r) {
    const int i = kPairs[r][0], j = kPairs[r][1];
    std::array<Vec3, 4> dv;
    for (int k = 0; k < 4; ++k) {
      dv[k] = v[k].segment<3>(3 * i) - v[k].segment<3>(3 * j);
    }
    L(r, 0) = dv[0].dot(dv[0]);
    L(r, 1) = 2 * dv[0].dot(dv[1]);
    L(r, 2) = dv[1].dot(dv[1]);
    L(r, 3) = 2 * dv[0].dot(dv[2]);
    L(r, 4) = 2 * dv[1].dot(dv[2]);
    L(r, 5) = dv[2].dot(dv[2]);
    L(r, 6) = 2 * dv[0].dot(dv[3]);
    L(r, 7) = 2 * dv[1].dot(dv[3]);
    L(r, 8) = 2 * dv[2].dot(dv[3]);
    L(r, 9) = dv[3].dot(dv[3]);
    rho[r] = (cw[i] - cw[j]).squaredNorm();
  }

  auto solve_subset = [&](const std::vector<int>& cols) {
    Eigen::MatrixXd Ls(6, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) Ls.col(c) = L.col(cols[c]);
    return Eigen::VectorXd(
        Ls.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rho));
  };

  std::array<Vec4, 3> candidates;
  {
    // Dominant direction v1 with corrections from v2..v4.
    const Eigen::VectorXd x = solve_subset({0, 1, 3, 6});
    Vec4 b = Vec4::Zero();
    b[0] = std::sqrt(std::abs(x[0]));
    if (b[0] > 1e-12) {
      b[1] = x[1] / b[0];
      b[2] = x[2] / b[0];
      b[3] = x[3] / b[0];
    }
    candidates[0] = b;
  }
  {
    // Two dominant directions.
    const Eigen::VectorXd x = solve_subset({0, 1, 2});
    Vec4 b = Vec4::Zero();
    b[0] = std::sqrt(std::abs(x[0]));
    b[1] = std::sqrt(std::abs(x[2]));
    if (x[1] < 0.0) b[1] = -b[1];
    candidates[1] = b;
  }
  {
    // Three dominant directions.
    const Eigen::VectorXd x = solve_subset({0, 1, 2, 3, 4});
    Vec4 b = Vec4::Zero();
    b[0] = std::sqrt(std::abs(x[0]));
    b[1] = std::sqrt(std::abs(x[2]));
    if (x[1] < 0.0) b[1] = -b[1];
    if (b[0] > 1e-12) b[2] = x[3] / b[0];
    candidates[2] = b;
  }

  double best_err = std::numeric_limits<double>::infinity();
  Pose best;
  Eigen::Matrix3Xd world(3, n);
  for (std::size_t i = 0; i < n; ++i) world.col(i) = model[i];

  for (Vec4 betas : candidates) {
    gauss_newton_betas(L, rho, betas);
    Vec12 x = Vec12::Zero();
    for (int k = 0; k < 4; ++k) x += betas[k] * v[k];

    // Reconstruct camera-frame points; flip if the cloud sits behind the
    // camera (the nullspace sign is arbitrary).
    Eigen::Matrix3Xd cam(3, n);
    double zsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Vec3 p = Vec3::Zero();
      for (int j = 0; j < 4; ++j) p += alphas(i, j) * x.segment<3>(3 * j);
      cam.col(i) = p;
      zsum += p.z();
    }
    if (zsum < 0.0) cam = -cam;

    const Mat4 T = Eigen::umeyama(world, cam, /*with_scaling=*/false);
    Pose pose;
    pose.R = T.topLeftCorner<3, 3>();
    Eigen::Quaterniond q(pose.R);
    q.normalize();
    pose.R = q.toRotationMatrix();
    pose.t = T.topRightCorner<3, 1>();

    double err = 0.0;
    bool valid = true;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 pc = pose.apply(model[i]);
      if (pc.z() <= 1e-9) {
        valid = false;
        break;
      }
      const Vec2 uv(K.fx * pc.x() / pc.z() + K.cx,
                    K.fy * pc.y() / pc.z() + K.cy);
      err += (uv - pixels[i]).squaredNorm();
    }
    if (valid && err < best_err) {
      best_err = err;
      best = pose;
    }
  }
  if (!std::isfinite(best_err)) return false;
  out = best;
  return true;
}

}  // namespace dcpose
