#pragma once

#include <vector>

#include "dcpose/geom/camera.hpp"
#include "dcpose/geom/mesh.hpp"
#include "dcpose/label/image.hpp"

namespace dcpose {

struct ClutterDisk {
  Vec2 center;  // full-image pixel coordinates
  double radius = 0.0;
};

// Flat two-color scene: background color everywhere, clutter disks in the
// foreground color painted on the background, then the object silhouette in
// the foreground color on top. Gives region-based refinement a segmentable
// image whose difficulty is controlled by the clutter.
Image<std::uint8_t> render_two_color(const TriMesh& mesh, const Pose& pose,
                                     const CameraIntrinsics& K,
                                     const Color3u8& fg, const Color3u8& bg,
                                     const std::vector<ClutterDisk>& clutter = {});

}  // namespace dcpose
