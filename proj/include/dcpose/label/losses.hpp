#pragma once

#include "dcpose/label/maps.hpp"

namespace dcpose {

// Per-pixel coordinate error: the 3-channel L1 sum |dx|+|dy|+|dz| inside the
// mask, zero outside. Shapes must match the labels.
Image<double> error_map(const Image<double>& pred_coords,
                        const LabelMaps& labels);

struct LossWeights {
  double alpha = 1.0;  // coordinate term
  double beta = 1.0;   // confidence term
  double gamma = 1.0;  // error term
  double delta = 0.1;  // region term
};

struct LossBreakdown {
  double coord = 0.0;
  double conf = 0.0;
  double error = 0.0;
  double region = 0.0;
  double total = 0.0;
};

// Training losses:
//  coord:  mean over mask pixels of the 3-channel L1 coordinate error.
//  conf:   mean binary cross-entropy of confidence vs mask over all pixels,
//          predictions clamped to [1e-7, 1 - 1e-7].
//  error:  mean squared error between the predicted error map and the one
//          recomputed from the predicted coordinates, bounded above by 1.
//  region: mean over mask pixels of -log(score at the true region), scores
//          clamped from below at 1e-7; zero when no scores are present.
//  total:  alpha*coord + beta*conf + gamma*error + delta*region.
LossBreakdown compute_losses(const PredictionMaps& pred,
                             const LabelMaps& labels,
                             const LossWeights& w = {});

}  // namespace dcpose
