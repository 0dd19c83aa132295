#include "dcpose/metrics/pose_error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dcpose/errors.hpp"

namespace dcpose {

PoseError pose_error(const Pose& estimate, const Pose& truth,
                     const PoseErrorOptions& opts) {
  const double t_norm = truth.t.norm();
  if (t_norm < 1e-12) {
    throw ZeroGtTranslation("relative translation error is undefined");
  }

  PoseError err;
  err.translation = (estimate.t - truth.t).norm() / t_norm;

  const UnitQuaternion qe = quat_of(estimate.R);
  const UnitQuaternion qt = quat_of(truth.R);
  const double dot = std::abs(qe.coeffs_wxyz().dot(qt.coeffs_wxyz()));
  err.rotation = 2.0 * std::acos(std::clamp(dot, 0.0, 1.0));

  const double rot_floor = opts.zero_rotation_deg * std::numbers::pi / 180.0;
  const bool t_small = err.translation < opts.zero_translation;
  const bool r_small = err.rotation < rot_floor;
  if (opts.conjunctive) {
    if (t_small && r_small) {
      err.translation = 0.0;
      err.rotation = 0.0;
    }
  } else {
    if (t_small) err.translation = 0.0;
    if (r_small) err.rotation = 0.0;
  }
  err.combined = err.translation + err.rotation;
  return err;
}

}  // namespace dcpose
