#pragma once

#include <cstdint>
#include <vector>

#include "dcpose/label/image.hpp"

namespace dcpose {

// Ground-truth per-pixel targets for one view of one object.
//  coords:  h x w x 3, object coordinates normalized to [0,1]^3; zero
//           outside the mask.
//  mask:    h x w x 1, 1 on the object, 0 elsewhere.
//  regions: h x w x 1, surface region id, -1 on the background.
//  depth:   h x w x 1, camera-frame z in model units; zero outside the mask.
struct LabelMaps {
  Image<double> coords;
  Image<std::int32_t> regions;
  Image<std::uint8_t> mask;
  Image<double> depth;
};

// Per-pixel estimates the pose pipeline consumes.
//  coords:        h x w x 3, normalized object coordinates.
//  error:         h x w x 1, estimated coordinate error, >= 0.
//  confidence:    h x w x 1, foreground confidence in [0,1].
//  region_scores: h x w x n per-region scores, or empty when not produced.
struct PredictionMaps {
  Image<double> coords;
  Image<double> error;
  Image<double> confidence;
  Image<double> region_scores;
};

// Surface partition into `count` regions, one id per mesh vertex; each
// vertex belongs to the nearest seed vertex.
struct RegionPartition {
  int count = 0;
  std::vector<std::uint32_t> seeds;
  std::vector<std::int32_t> vertex_region;
};

}  // namespace dcpose
