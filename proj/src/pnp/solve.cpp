#include "dcpose/pnp/solve.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "dcpose/errors.hpp"
#include "dcpose/pnp/epnp.hpp"
#include "dcpose/pnp/p3p.hpp"

namespace dcpose {

namespace {

// Squared reprojection error, infinity when the point is not in front.
double reproj_sq(const Pose& pose, const CameraIntrinsics& K,
                 const Correspondence& c) {
  const Vec3 p = pose.apply(c.model);
  if (p.z() <= 1e-9) return std::numeric_limits<double>::infinity();
  const Vec2 uv(K.fx * p.x() / p.z() + K.cx, K.fy * p.y() / p.z() + K.cy);
  return (uv - c.pixel).squaredNorm();
}

std::vector<int> collect_inliers(const Pose& pose, const CameraIntrinsics& K,
                                 const std::vector<Correspondence>& corr,
                                 double inlier_px) {
  std::vector<int> inliers;
  const double thresh_sq = inlier_px * inlier_px;
  for (std::size_t i = 0; i < corr.size(); ++i) {
    if (reproj_sq(pose, K, corr[i]) < thresh_sq) {
      inliers.push_back(static_cast<int>(i));
    }
  }
  return inliers;
}

double mean_reproj(const Pose& pose, const CameraIntrinsics& K,
                   const std::vector<Correspondence>& corr,
                   const std::vector<int>& indices) {
  if (indices.empty()) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const int i : indices) sum += std::sqrt(reproj_sq(pose, K, corr[i]));
  return sum / static_cast<double>(indices.size());
}

double cost(const Pose& pose, const CameraIntrinsics& K,
            const std::vector<Correspondence>& corr,
            const std::vector<int>& indices) {
  double sum = 0.0;
  for (const int i : indices) sum += reproj_sq(pose, K, corr[i]);
  return sum;
}

}  // namespace

Pose refine_pose_lm(const Pose& init, const std::vector<Correspondence>& corr,
                    const std::vector<int>& indices,
                    const CameraIntrinsics& K, int iterations,
                    double damping) {
  Pose pose = init;
  double lambda = damping;
  double current = cost(pose, K, corr, indices);

  for (int iter = 0; iter < iterations; ++iter) {
    Mat6 JtJ = Mat6::Zero();
    Vec6 Jtr = Vec6::Zero();
    bool valid = true;
    for (const int i : indices) {
      const Vec3 p = pose.apply(corr[i].model);
      if (p.z() <= 1e-9) {
        valid = false;
        break;
      }
      const Eigen::Matrix<double, 2, 3> Jp = project_jacobian(K, p);
      Eigen::Matrix<double, 3, 6> Jx;
      Jx.leftCols<3>() = -pose.R * skew(corr[i].model);
      Jx.rightCols<3>() = Mat3::Identity();
      const Eigen::Matrix<double, 2, 6> J = Jp * Jx;
      const Vec2 uv(K.fx * p.x() / p.z() + K.cx, K.fy * p.y() / p.z() + K.cy);
      const Vec2 r = uv - corr[i].pixel;
      JtJ += J.transpose() * J;
      Jtr += J.transpose() * r;
    }
    if (!valid) break;

    const Vec6 delta = (JtJ + lambda * Mat6::Identity()).ldlt().solve(-Jtr);
    const Pose trial = perturb(pose, delta);
    const double trial_cost = cost(trial, K, corr, indices);
    if (std::isfinite(trial_cost) && trial_cost < current) {
      pose = trial;
      current = trial_cost;
      lambda = std::max(lambda * 0.5, 1e-12);
    } else {
      lambda *= 10.0;
    }
  }
  return pose;
}

PnPResult solve_pnp(const std::vector<Correspondence>& corr,
                    const CameraIntrinsics& K, const RansacParams& params) {
  const auto n = corr.size();
  if (n < 4) throw TooFewCorrespondences("need at least 4, got " +
                                         std::to_string(n));

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  std::vector<int> best_inliers;
  Pose best_pose;
  double best_reproj = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < params.iterations; ++iter) {
    std::array<std::size_t, 4> sample;
    for (int k = 0; k < 4; ++k) {
      bool fresh = true;
      do {
        sample[k] = pick(rng);
        fresh = true;
        for (int j = 0; j < k; ++j) {
          if (sample[j] == sample[k]) fresh = false;
        }
      } while (!fresh);
    }

    const std::array<Vec3, 3> model = {corr[sample[0]].model,
                                       corr[sample[1]].model,
                                       corr[sample[2]].model};
    const std::array<Vec3, 3> rays = {
        backproject(K, corr[sample[0]].pixel).normalized(),
        backproject(K, corr[sample[1]].pixel).normalized(),
        backproject(K, corr[sample[2]].pixel).normalized()};
    const std::vector<Pose> candidates = solve_p3p(model, rays);
    if (candidates.empty()) continue;

    // The fourth sampled point disambiguates the minimal solutions.
    const Pose* chosen = nullptr;
    double fourth_best = std::numeric_limits<double>::infinity();
    for (const Pose& cand : candidates) {
      const double e = reproj_sq(cand, K, corr[sample[3]]);
      if (e < fourth_best) {
        fourth_best = e;
        chosen = &cand;
      }
    }
    if (chosen == nullptr) continue;

    const std::vector<int> inliers =
        collect_inliers(*chosen, K, corr, params.inlier_px);
    if (inliers.size() < best_inliers.size()) continue;
    const double mr = mean_reproj(*chosen, K, corr, inliers);
    if (inliers.size() > best_inliers.size() || mr < best_reproj) {
      best_inliers = inliers;
      best_pose = *chosen;
      best_reproj = mr;
    }
  }

  if (best_inliers.size() < static_cast<std::size_t>(std::max(4, params.min_inliers))) {
    throw NoConsensus("best sample keeps " +
                      std::to_string(best_inliers.size()) + " inliers, need " +
                      std::to_string(std::max(4, params.min_inliers)));
  }

  // Linear refit over the consensus set, kept only when it helps.
  {
    std::vector<Vec3> model;
    std::vector<Vec2> pixels;
    for (const int i : best_inliers) {
      model.push_back(corr[i].model);
      pixels.push_back(corr[i].pixel);
    }
    Pose refit;
    if (solve_epnp(model, pixels, K, refit)) {
      if (cost(refit, K, corr, best_inliers) <
          cost(best_pose, K, corr, best_inliers)) {
        best_pose = refit;
      }
    }
  }

  best_pose = refine_pose_lm(best_pose, corr, best_inliers, K,
                             params.lm_iterations, params.lm_damping);

  PnPResult result;
  result.pose = best_pose;
  result.inliers = collect_inliers(best_pose, K, corr, params.inlier_px);
  if (result.inliers.size() <
      static_cast<std::size_t>(std::max(4, params.min_inliers))) {
    throw NoConsensus("refined pose keeps " +
                      std::to_string(result.inliers.size()) + " inliers");
  }
  result.mean_reproj_px = mean_reproj(best_pose, K, corr, result.inliers);
  return result;
}

}  // namespace dcpose
