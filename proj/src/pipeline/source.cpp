#include "dcpose/pipeline/source.hpp"

#include "dcpose/label/rasterizer.hpp"
#include "dcpose/pipeline/ensemble.hpp"

namespace dcpose {

PredictionMaps MapsSource::predict(const RoI&, int quarter_turns) {
  PredictionMaps out;
  out.coords = rotate_quarters(maps_.coords, quarter_turns);
  out.error = rotate_quarters(maps_.error, quarter_turns);
  out.confidence = rotate_quarters(maps_.confidence, quarter_turns);
  if (!maps_.region_scores.empty())
    out.region_scores = rotate_quarters(maps_.region_scores, quarter_turns);
  return out;
}

PredictionMaps OracleSource::predict(const RoI& roi, int quarter_turns) {
  const CameraIntrinsics crop = roi.crop_camera(K_, map_size_);
  LabelMaps labels = rasterize(mesh_, gt_pose_, crop, bbox_, partition_);
  labels.coords = rotate_quarters(labels.coords, quarter_turns);
  labels.regions = rotate_quarters(labels.regions, quarter_turns);
  labels.mask = rotate_quarters(labels.mask, quarter_turns);
  labels.depth = rotate_quarters(labels.depth, quarter_turns);
  return corrupt(labels, noise_,
                 seed_ + static_cast<std::uint64_t>(quarter_turns));
}

}  // namespace dcpose
