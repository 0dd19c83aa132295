#pragma once

#include <cstdint>

#include "dcpose/label/maps.hpp"

namespace dcpose {

// Synthetic degradation of ground-truth maps into predictions, standing in
// for a trained dense-correspondence network.
struct NoiseConfig {
  // Per-channel Gaussian noise added to foreground coordinates, then clamped
  // to [0,1].
  double sigma_coord = 0.05;

  // Gross-error patches: circular blobs centered on random foreground
  // pixels whose coordinates are replaced by one random constant each.
  int blob_count = 3;
  double blob_radius_min = 2.0;  // px
  double blob_radius_max = 8.0;  // px

  // Confidence softening: foreground 1-|N(0,sigma_conf)|, background
  // |N(0,sigma_conf)|, clamped to [0,1]; then flipped to 1-c at flip_rate.
  double sigma_conf = 0.15;
  double flip_rate = 0.0;

  // oracle: the error channel is recomputed from the corrupted coordinates,
  // so it is exact. noisy: Gaussian noise is added on top and the result is
  // clamped to be non-negative.
  enum class ErrorChannel { oracle, noisy };
  ErrorChannel error_channel = ErrorChannel::oracle;
  double sigma_error = 0.05;

  // Emit one-hot region scores from the label regions. region_count 0 means
  // infer from the largest id present.
  bool region_scores = false;
  int region_count = 0;
};

// Deterministic for a fixed (labels, config, seed) triple.
PredictionMaps corrupt(const LabelMaps& labels, const NoiseConfig& cfg,
                       std::uint64_t seed);

}  // namespace dcpose
