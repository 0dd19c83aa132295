#pragma once

#include <vector>

#include "dcpose/label/maps.hpp"
#include "dcpose/roi.hpp"
#include "dcpose/types.hpp"

namespace dcpose {

// One 2D-3D pair: full-image pixel, model-frame point, and the per-pixel
// confidence and estimated coordinate error it was read from.
struct Correspondence {
  Vec2 pixel = Vec2::Zero();
  Vec3 model = Vec3::Zero();
  double confidence = 0.0;
  double error = 0.0;
};

// Reads correspondences from the maps: keep pixel (x, y) on the stride grid
// when confidence > conf_thresh and the error channel (clamped to [0,1] on
// ingest) is < eps. Coordinates are denormalized with `bbox`, pixels mapped
// from crop space into the full image. For eps1 <= eps2 the eps1 set is a
// subset of the eps2 set.
std::vector<Correspondence> extract_correspondences(
    const PredictionMaps& pred, const RoI& roi, const BBox3& bbox,
    double conf_thresh, double eps, int stride);

struct ThresholdPolicy {
  enum class Mode { fixed, adaptive, grid };
  Mode mode = Mode::adaptive;
  double fixed_eps = 1.0;
  std::vector<double> grid = {1.0, 0.5, 0.3, 0.1, 0.075, 0.05, 0.025};
  int min_count = 32;
  double rho = 0.05;  // fraction of the confident pixels that must survive
};

// Smallest grid threshold that keeps at least
// max(min_count, rho * confident_count) correspondences, where
// confident_count ignores the error channel. Falls back to the largest grid
// entry when none qualifies.
double adaptive_eps(const PredictionMaps& pred, const RoI& roi,
                    const BBox3& bbox, double conf_thresh, int stride,
                    const ThresholdPolicy& policy);

}  // namespace dcpose
