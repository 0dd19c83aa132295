#pragma once

#include <cstdint>
#include <vector>

#include "dcpose/pipeline/ensemble.hpp"
#include "dcpose/pnp/solve.hpp"
#include "dcpose/refine/refiner.hpp"

namespace dcpose {

// One candidate pose: a PnP solve on the correspondences of one rotation
// variant at one error threshold, later refined and scored. probability is
// meaningful iff status == ok and the hypothesis went through refinement.
struct Hypothesis {
  enum class Status { ok, pnp_failed, refine_failed };

  double eps = 1.0;
  int quarter_turns = 0;
  PnPResult initial;
  Pose refined;
  double probability = 0.0;
  Status status = Status::ok;
};

struct GenerateConfig {
  ThresholdPolicy policy;
  double conf_thresh = 0.5;
  int stride = 2;
  RansacParams ransac;
};

// Runs extract+solve for every (rotation variant, eps) pair: the whole grid
// in grid mode, the single fixed value in fixed mode, or one adaptive eps
// per rotation variant in adaptive mode. PnP failures become pnp_failed
// hypotheses; the batch never aborts early. Throws NoHypotheses when every
// combination fails. RANSAC seeds derive from ransac.seed and the pair
// index, so results are deterministic and independent of evaluation order.
std::vector<Hypothesis> generate(const PredictionSets& sets, const RoI& roi,
                                 const CameraIntrinsics& K, const BBox3& bbox,
                                 const GenerateConfig& cfg);

struct SelectConfig {
  RefinerConfig refiner;
  bool refine = true;  // refine hypotheses and select by probability
  int jobs = 1;        // concurrent hypothesis refinements
};

struct Selection {
  Hypothesis best;
  std::vector<Hypothesis> hypotheses;  // all inputs, refinement applied
};

// Refines every ok hypothesis on the image (each with its own fresh color
// histograms, so results do not depend on scheduling), attaches
// probabilities, and returns the argmax; ties break to lower eps, then
// fewer quarter turns. With cfg.refine false, poses stay unrefined and
// selection prefers more inliers, then lower reprojection error, then the
// same tie-break. Throws AllHypothesesFailed when no hypothesis survives.
Selection select(std::vector<Hypothesis> hypotheses,
                 const Image<std::uint8_t>& image, const CameraIntrinsics& K,
                 const PredictionSets& sets, const RoI& roi,
                 const TriMesh& mesh, const SparseViewpointModel& svm,
                 const SelectConfig& cfg);

// Bounding-box refinement gate: when the predicted-foreground error map is
// confident (std below std_thresh), re-derive the RoI from the mesh rendered
// at the pose estimate — mask bounding box, padded 10% and squared — else
// return the input RoI unchanged.
RoI refine_roi(const PredictionMaps& maps, const TriMesh& mesh,
               const Pose& pose, const CameraIntrinsics& K, const RoI& input,
               double std_thresh = 0.1);

struct EstimateConfig {
  GenerateConfig generate;
  SelectConfig select;
  bool ensemble = true;
  bool roi_refinement = false;  // one re-prediction round via refine_roi
  double std_thresh = 0.1;
};

struct EstimateResult {
  Hypothesis best;
  std::vector<Hypothesis> hypotheses;
  RoI roi;  // the RoI the final estimate used
};

// Full inference for one image: rotation ensemble, hypothesis generation,
// refinement, and maximum-probability selection. With roi_refinement on,
// the RoI is re-derived from the first estimate (when the error-map gate
// opens) and the whole pass runs once more on the new crop.
EstimateResult estimate(CorrespondenceSource& source,
                        const Image<std::uint8_t>& image,
                        const CameraIntrinsics& K, const RoI& roi,
                        const TriMesh& mesh, const BBox3& bbox,
                        const SparseViewpointModel& svm,
                        const EstimateConfig& cfg);

}  // namespace dcpose
