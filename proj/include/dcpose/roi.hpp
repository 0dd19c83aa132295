#pragma once

#include "dcpose/geom/camera.hpp"
#include "dcpose/types.hpp"

namespace dcpose {

enum class RoISource { detector, ground_truth_mask, refined };

// Square crop of the full image, resampled to map_size x map_size for the
// per-pixel maps. center and side are full-image pixel units.
struct RoI {
  Vec2 center = Vec2::Zero();
  double side = 0.0;
  RoISource source = RoISource::detector;

  // Continuous full-image coordinate of map pixel (x, y).
  Vec2 map_to_image(const Vec2& map_px, int map_size) const {
    const double step = side / static_cast<double>(map_size);
    return center - Vec2(side, side) / 2.0 + map_px * step;
  }

  // Inverse of map_to_image: continuous map coordinate of an image point.
  Vec2 image_to_map(const Vec2& image_px, int map_size) const {
    const double step = side / static_cast<double>(map_size);
    return (image_px - (center - Vec2(side, side) / 2.0)) / step;
  }

  CameraIntrinsics crop_camera(const CameraIntrinsics& K, int map_size) const {
    return crop_intrinsics(K, center, side, map_size);
  }
};

}  // namespace dcpose
