#pragma once

#include <vector>

#include "dcpose/geom/camera.hpp"
#include "dcpose/refine/lines.hpp"

namespace dcpose {

// Parameters of the contour-location likelihood and its pose weighting.
// sigma_r and slope are in scaled line units (sample index / scale).
struct ProbabilityConfig {
  double sigma_r = 2.0;
  double slope = 0.5;  // s_h in h_f(x) = 1/2 - 1/2 tanh(x / (2 s_h))
};

// Smoothed step functions: h_f falls from 1 to 0 across the contour,
// h_b = 1 - h_f, both evaluated in scaled line units.
double smoothed_step_fg(double x, double slope);
double smoothed_step_bg(double x, double slope);

// Contour-location likelihood of Eq.-8 form: the product over samples of
// h_f(r - d) p_f(r) + h_b(r - d) p_b(r). d is in pixels along the normal;
// log form returns the sum of logs with each factor floored at 1e-300.
double contour_log_likelihood(const CorrespondenceLine& line,
                              const LinePosteriors& post, double d_px,
                              const ProbabilityConfig& cfg);
double contour_likelihood(const CorrespondenceLine& line,
                          const LinePosteriors& post, double d_px,
                          const ProbabilityConfig& cfg);

// Signed contour distance d = n . (project(q under pose) - c) in pixels,
// and its derivative with respect to the local pose perturbation
// (rotation in the body frame, translation additive). Throws
// NonPositiveDepth when the point is behind the camera.
double contour_distance(const Pose& pose, const CameraIntrinsics& K,
                        const CorrespondenceLine& line);
Vec6 contour_distance_jacobian(const Pose& pose, const CameraIntrinsics& K,
                               const CorrespondenceLine& line);

// Weighted sum over valid lines of the per-line-normalized contour
// log-likelihood, evaluated at the given pose (the perturbation origin):
//   sum_i w_i (log L_i(d_i) - log Z_i),  w_i = slope scale^2 / (sigma_r n_max)^2,
// Z_i summing L_i over the line's sample domain. gradient is the exact
// derivative with respect to the pose perturbation. step_gradient and
// curvature come from fitting each line's normalized contour-distance
// distribution with a Gaussian (mean mu_i, variance var_i) and
// differentiating that approximation instead:
//   step_gradient = sum_i k_i w_i (mu_i - d_i) / var_i J_i
//   curvature     = sum_i k_i w_i / var_i J_i J_i^T   (positive semidefinite)
// The Gaussian view keeps its pull proportional to the full distance to each
// line's distribution mean, where the exact slope saturates, so Newton steps
// built from it converge from far-off poses. k_i is a Huber weight,
// min(1, huber_c / |mu_i - d_i| * std_i): lines whose span contains no
// boundary report an end-peaked distribution with deceptively small variance,
// and the cutoff caps their influence.
struct PoseProbability {
  double weighted_log_sum = 0.0;
  int valid_lines = 0;
  int invalid_lines = 0;
  Vec6 gradient = Vec6::Zero();
  Vec6 step_gradient = Vec6::Zero();
  Mat6 curvature = Mat6::Zero();

  // Cross-hypothesis comparable score: exp of the mean per-line term.
  double normalized() const;
};

PoseProbability evaluate_pose_probability(
    const Pose& pose, const CameraIntrinsics& K,
    const std::vector<CorrespondenceLine>& lines,
    const std::vector<LinePosteriors>& posteriors, const ProbabilityConfig& cfg,
    bool with_derivatives = true);

// Value-only evaluation at a perturbation of `pose`, for finite differences.
double pose_probability_value(const Pose& pose, const Vec6& theta,
                              const CameraIntrinsics& K,
                              const std::vector<CorrespondenceLine>& lines,
                              const std::vector<LinePosteriors>& posteriors,
                              const ProbabilityConfig& cfg);

}  // namespace dcpose
