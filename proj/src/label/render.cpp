#include "dcpose/label/render.hpp"

#include "dcpose/label/rasterizer.hpp"

namespace dcpose {

Image<std::uint8_t> render_two_color(const TriMesh& mesh, const Pose& pose,
                                     const CameraIntrinsics& K,
                                     const Color3u8& fg, const Color3u8& bg,
                                     const std::vector<ClutterDisk>& clutter) {
  Image<std::uint8_t> img(K.height, K.width, 3);
  for (int y = 0; y < K.height; ++y) {
    for (int x = 0; x < K.width; ++x) {
      for (int c = 0; c < 3; ++c) img.at(y, x, c) = bg[c];
    }
  }
  for (const auto& disk : clutter) {
    const int y0 = std::max(0.0, std::floor(disk.center.y() - disk.radius));
    const int y1 = std::min(K.height - 1.0, std::ceil(disk.center.y() + disk.radius));
    const int x0 = std::max(0.0, std::floor(disk.center.x() - disk.radius));
    const int x1 = std::min(K.width - 1.0, std::ceil(disk.center.x() + disk.radius));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double dy = y - disk.center.y(), dx = x - disk.center.x();
        if (dy * dy + dx * dx > disk.radius * disk.radius) continue;
        for (int c = 0; c < 3; ++c) img.at(y, x, c) = fg[c];
      }
    }
  }
  Image<std::uint8_t> mask;
  Image<double> depth;
  rasterize_mask(mesh, pose, K, mask, depth);
  for (int y = 0; y < K.height; ++y) {
    for (int x = 0; x < K.width; ++x) {
      if (!mask.at(y, x)) continue;
      for (int c = 0; c < 3; ++c) img.at(y, x, c) = fg[c];
    }
  }
  return img;
}

}  // namespace dcpose
