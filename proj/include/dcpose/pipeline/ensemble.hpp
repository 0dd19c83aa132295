#pragma once

#include <vector>

#include "dcpose/label/maps.hpp"
#include "dcpose/pipeline/source.hpp"

namespace dcpose {

// Rotates a square interleaved image by quarter_turns * 90 degrees
// counterclockwise as displayed (y down). Pixels move; channel values are
// untouched. quarter_turns may be negative or beyond 3; it is reduced mod 4.
// Throws ShapeMismatch on non-square input.
template <typename T>
Image<T> rotate_quarters(const Image<T>& img, int quarter_turns) {
  if (img.height != img.width)
    throw ShapeMismatch("quarter-turn rotation needs a square image");
  const int q = ((quarter_turns % 4) + 4) % 4;
  if (q == 0) return img;
  const int n = img.height;
  Image<T> out(n, n, img.channels);
  for (int yo = 0; yo < n; ++yo) {
    for (int xo = 0; xo < n; ++xo) {
      // Source pixel of output (xo, yo): inverse of the CCW turn
      // (x, y) -> (y, n-1-x), applied q times.
      int x = xo, y = yo;
      switch (q) {
        case 1: x = n - 1 - yo; y = xo; break;
        case 2: x = n - 1 - xo; y = n - 1 - yo; break;
        case 3: x = yo; y = n - 1 - xo; break;
      }
      for (int c = 0; c < img.channels; ++c)
        out.at(yo, xo, c) = img.at(y, x, c);
    }
  }
  return out;
}

// Per-rotation prediction maps, all expressed in the unrotated crop frame,
// plus their averaged foreground confidence for the refiner.
struct PredictionSets {
  std::vector<PredictionMaps> per_rotation;  // index = quarter turns used
  Image<float> averaged_confidence;
};

// Queries the source at 0, 90, 180, and 270 degrees (or 0 only when
// `ensemble` is false), reverses each rotation on every map channel, and
// averages the confidence channels. Coordinate values are model coordinates
// and are left untouched; only pixel positions move. Errors thrown by the
// source surface as SourceFailure; maps that disagree in shape across
// rotations raise ShapeMismatch.
PredictionSets rotation_ensemble(CorrespondenceSource& source, const RoI& roi,
                                 bool ensemble = true);

}  // namespace dcpose
