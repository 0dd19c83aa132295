#pragma once

#include <cstdint>
#include <vector>

#include "dcpose/geom/camera.hpp"
#include "dcpose/pnp/correspondence.hpp"

namespace dcpose {

struct PnPResult {
  Pose pose;
  std::vector<int> inliers;      // indices into the input correspondences
  double mean_reproj_px = 0.0;   // over the final inlier set
};

struct RansacParams {
  int iterations = 300;
  double inlier_px = 2.0;
  int min_inliers = 12;
  int lm_iterations = 10;
  double lm_damping = 1e-3;
  std::uint64_t seed = 0;
};

// Levenberg-Marquardt on the reprojection error over corr[indices],
// parametrized in the local pose chart (body-frame rotation, camera-frame
// translation). Steps that push a point to non-positive depth are rejected
// like cost increases.
Pose refine_pose_lm(const Pose& init, const std::vector<Correspondence>& corr,
                    const std::vector<int>& indices,
                    const CameraIntrinsics& K, int iterations, double damping);

// RANSAC with four-point minimal samples (three drive the solver, the
// fourth picks among its solutions), then a linear refit and an LM polish
// on the consensus set. Throws TooFewCorrespondences (< 4 inputs) and
// NoConsensus (no sample reaches min_inliers).
PnPResult solve_pnp(const std::vector<Correspondence>& corr,
                    const CameraIntrinsics& K, const RansacParams& params);

}  // namespace dcpose
