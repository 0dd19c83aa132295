#pragma once

#include <vector>

#include "dcpose/geom/camera.hpp"
#include "dcpose/label/image.hpp"
#include "dcpose/refine/histograms.hpp"
#include "dcpose/refine/sparse_viewpoint.hpp"
#include "dcpose/roi.hpp"

namespace dcpose {

// Learned foreground confidence sampled from a map in RoI coordinates.
// A null map yields the uninformative value 0.5 everywhere, as does any
// lookup outside the map; bilinear interpolation is exact for constant maps
// so a map filled with 0.5 reproduces the null case bit for bit.
struct LearnedConfidence {
  const Image<float>* map = nullptr;
  RoI roi;

  double sample(const Vec2& image_px) const;
};

// One correspondence line: pixel samples along the silhouette normal of a
// projected contour point. center is the projection in pixels; normal is the
// outward image-plane unit normal; samples sit at unit dominant-axis steps,
// samples_per_side() on each side of the center, so consecutive samples are
// 1/n_max pixels apart along the normal and the scaled line coordinate
// r = index/scale spans [-length, length] regardless of scale.
struct CorrespondenceLine {
  Vec2 center = Vec2::Zero();
  Vec2 normal = Vec2::UnitX();
  int scale = 1;
  int length = 8;                // per-side extent in scaled units
  double n_max = 1.0;            // infinity norm of the pixel-step normal
  Vec3 model_point = Vec3::Zero();
  std::vector<Color3u8> colors;  // 2 * length * scale + 1 samples
  std::vector<double> confidences;

  int samples_per_side() const { return length * scale; }
  // Scaled line coordinate of sample j (0-based), in [-length, length].
  double coordinate(int j) const {
    return static_cast<double>(j - samples_per_side()) / scale;
  }
};

struct LineBuildResult {
  std::vector<CorrespondenceLine> lines;
  int skipped = 0;  // behind camera, off image, or degenerate normal
};

// Projects the view's contour points under `pose` and reads color and
// learned-confidence samples along each outward normal. Lines whose sample
// span leaves the image or whose point falls behind the camera are skipped.
LineBuildResult build_lines(const Pose& pose, const CameraIntrinsics& K,
                            const SilhouetteView& view,
                            const Image<std::uint8_t>& image,
                            const LearnedConfidence& confidence, int scale,
                            int length);

// Fused foreground/background posteriors for every sample of a line.
struct LinePosteriors {
  std::vector<double> fg, bg;
};

LinePosteriors line_posteriors(const CorrespondenceLine& line,
                               const ColorHistograms& hist);

// Accumulates histogram pixels from line samples: scaled coordinates
// r <= -margin count as foreground, r >= +margin as background.
void collect_histogram_pixels(const CorrespondenceLine& line, double margin,
                              std::vector<Color3u8>& fg_pixels,
                              std::vector<Color3u8>& bg_pixels);

}  // namespace dcpose
