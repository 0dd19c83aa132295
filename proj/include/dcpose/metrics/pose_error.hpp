#pragma once

#include "dcpose/geom/pose.hpp"

namespace dcpose {

struct PoseErrorOptions {
  // Components below these floors are snapped to exactly zero, absorbing
  // annotation-level noise. Applied independently per component unless
  // conjunctive is set, in which case both must qualify.
  double zero_translation = 0.002173;  // relative units
  double zero_rotation_deg = 0.169;
  bool conjunctive = false;
};

struct PoseError {
  double translation = 0.0;  // |t_est - t_gt| / |t_gt|
  double rotation = 0.0;     // radians, quaternion-sign invariant
  double combined = 0.0;     // translation + rotation after zeroing
};

// Throws ZeroGtTranslation when |t_gt| < 1e-12. rotation is
// 2*acos(|<q_est, q_gt>|), symmetric in its arguments, with the inner
// product clamped into acos domain.
PoseError pose_error(const Pose& estimate, const Pose& truth,
                     const PoseErrorOptions& opts = {});

}  // namespace dcpose
