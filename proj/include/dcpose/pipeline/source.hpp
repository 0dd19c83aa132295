#pragma once

#include <cstdint>

#include "dcpose/geom/camera.hpp"
#include "dcpose/geom/mesh.hpp"
#include "dcpose/label/corrupt.hpp"
#include "dcpose/label/maps.hpp"
#include "dcpose/label/regions.hpp"
#include "dcpose/roi.hpp"

namespace dcpose {

// Provider of per-pixel prediction maps for a square crop, standing in for
// the dense-correspondence network. quarter_turns asks for the prediction on
// the crop rotated counterclockwise by that many quarter turns; the returned
// maps live in the rotated frame, and the caller reverses the rotation.
class CorrespondenceSource {
 public:
  virtual ~CorrespondenceSource() = default;
  virtual PredictionMaps predict(const RoI& roi, int quarter_turns) = 0;
};

// Rotation-equivariant source backed by precomputed maps for one crop:
// rotating the input crop rotates the prediction and changes nothing else,
// so rotated queries return the stored maps spatially rotated. The maps must
// correspond to the RoI they were produced for; predict ignores its roi
// argument.
class MapsSource final : public CorrespondenceSource {
 public:
  explicit MapsSource(PredictionMaps maps) : maps_(std::move(maps)) {}
  PredictionMaps predict(const RoI& roi, int quarter_turns) override;

 private:
  PredictionMaps maps_;
};

// Renders ground-truth labels for the crop at a known pose and corrupts them
// into network-like predictions. Noise is drawn in the rotated frame with a
// per-rotation seed, so the four ensemble queries carry independent noise,
// as four forward passes of a real network would.
class OracleSource final : public CorrespondenceSource {
 public:
  OracleSource(const TriMesh& mesh, const BBox3& bbox, const Pose& gt_pose,
               const CameraIntrinsics& K, int map_size,
               const NoiseConfig& noise, std::uint64_t seed,
               const RegionPartition* partition = nullptr)
      : mesh_(mesh), bbox_(bbox), gt_pose_(gt_pose), K_(K),
        map_size_(map_size), noise_(noise), seed_(seed),
        partition_(partition) {}

  PredictionMaps predict(const RoI& roi, int quarter_turns) override;

 private:
  const TriMesh& mesh_;
  BBox3 bbox_;
  Pose gt_pose_;
  CameraIntrinsics K_;
  int map_size_;
  NoiseConfig noise_;
  std::uint64_t seed_;
  const RegionPartition* partition_;
};

}  // namespace dcpose
