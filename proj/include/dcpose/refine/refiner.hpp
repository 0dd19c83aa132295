#pragma once

#include <vector>

#include "dcpose/geom/mesh.hpp"
#include "dcpose/refine/probability.hpp"

namespace dcpose {

// Newton refinement settings. Scales run coarse to fine; at scale s each
// correspondence line reads line_length*s samples per side. Tikhonov weights
// damp the rotation and translation blocks of the normal equations.
struct RefinerConfig {
  double sigma_r = 2.0;
  double slope = 0.5;
  std::vector<int> scales = {5, 3, 2, 1};
  int iterations_per_scale = 4;
  double tikhonov_rotation = 5000.0;
  double tikhonov_translation = 500000.0;
  int histogram_bins = 16;
  double histogram_learning_rate = 0.2;
  int line_length = 8;            // per-side samples at scale 1
  double histogram_margin = 2.0;  // scaled units kept clear of the contour
  double max_step_rotation = 0.1;     // per-iteration trust region, radians
  double max_step_translation = 0.02;  // per-iteration trust region, meters
  int view_candidates = 4;       // nearest views competing per iteration
  int view_select_max_scale = 3;  // competition only at this scale or finer

  ProbabilityConfig probability() const { return {sigma_r, slope}; }
};

struct RefineResult {
  Pose pose;
  double probability = 0.0;  // exp of mean per-line weighted log-likelihood
  int iterations = 0;
};

// A view chosen by measured fit, with the lines and posteriors already built
// for it. view is -1 when no candidate produced any usable line.
struct ViewSelection {
  int view = -1;
  LineBuildResult built;
  std::vector<LinePosteriors> posteriors;
  double probability = 0.0;  // normalized pose probability under this view
};

// Chooses among the k views nearest the pose direction the one whose lines
// give the highest normalized pose probability. A silhouette rim is a
// discontinuous function of direction, so the angularly nearest view can
// carry contour points that lie well inside the true silhouette while a
// slightly farther view matches it almost exactly; measured fit is the
// reliable criterion. Far from convergence the fit ranking mostly reflects
// pose error, not template quality, so the refiner competes views only at
// fine scales (k = 1 reduces to the angular-nearest view).
ViewSelection select_view(const SparseViewpointModel& svm, const Pose& pose,
                          const CameraIntrinsics& K,
                          const Image<std::uint8_t>& image,
                          const LearnedConfidence& confidence, int scale,
                          int line_length, const ColorHistograms& histograms,
                          const ProbabilityConfig& prob_cfg, int k);

// Iterative pose refinement against image contours: per iteration, picks the
// best-fitting nearby silhouette view, reads correspondence lines, updates
// the color histograms, and applies one damped Newton step on the pose
// log-probability.
// `histograms` persists across calls so several hypotheses on the same image
// share one color model. Throws DivergedPose if the object leaves the frame,
// NoValidLines if no line can be built.
RefineResult refine(const Pose& init, const Image<std::uint8_t>& image,
                    const CameraIntrinsics& K, const LearnedConfidence& confidence,
                    const TriMesh& mesh, const SparseViewpointModel& svm,
                    const RefinerConfig& config, ColorHistograms& histograms);

}  // namespace dcpose
