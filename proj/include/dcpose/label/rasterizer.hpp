#pragma once

#include "dcpose/geom/camera.hpp"
#include "dcpose/geom/mesh.hpp"
#include "dcpose/label/maps.hpp"

namespace dcpose {

// CPU rasterizer: edge-function triangle fill with a z-buffer and
// perspective-correct interpolation of model-frame positions. Pixel (x, y)
// is sampled at continuous image coordinate (x, y). coords are normalized
// with `bbox`; region ids come from the nearest seed of `partition` at the
// interpolated surface point (all -1 when partition is null). Throws
// EmptyRender if no pixel is covered.
LabelMaps rasterize(const TriMesh& mesh, const Pose& pose,
                    const CameraIntrinsics& K, const BBox3& bbox,
                    const RegionPartition* partition = nullptr);

// Depth-only variant used for mask rendering; returns mask and depth only
// (coords and regions left empty). Does not throw on empty coverage.
void rasterize_mask(const TriMesh& mesh, const Pose& pose,
                    const CameraIntrinsics& K, Image<std::uint8_t>& mask,
                    Image<double>& depth);

}  // namespace dcpose
