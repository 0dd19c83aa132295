#include "dcpose/refine/lines.hpp"

#include <cmath>

namespace dcpose {

namespace {

double lerp(double a, double b, double t) { return a + (b - a) * t; }

}  // namespace

double LearnedConfidence::sample(const Vec2& image_px) const {
  if (map == nullptr) return 0.5;
  const Vec2 p = roi.image_to_map(image_px, map->width);
  const int x0 = static_cast<int>(std::floor(p.x()));
  const int y0 = static_cast<int>(std::floor(p.y()));
  if (x0 < 0 || y0 < 0 || x0 + 1 >= map->width || y0 + 1 >= map->height) return 0.5;
  const double fx = p.x() - x0, fy = p.y() - y0;
  const double top = lerp(map->at(y0, x0), map->at(y0, x0 + 1), fx);
  const double bot = lerp(map->at(y0 + 1, x0), map->at(y0 + 1, x0 + 1), fx);
  return lerp(top, bot, fy);
}

LineBuildResult build_lines(const Pose& pose, const CameraIntrinsics& K,
                            const SilhouetteView& view,
                            const Image<std::uint8_t>& image,
                            const LearnedConfidence& confidence, int scale,
                            int length) {
  LineBuildResult out;
  out.lines.reserve(view.points.size());
  const Mat3 lift = pose.R * view.camera.R.transpose();

  for (std::size_t i = 0; i < view.points.size(); ++i) {
    const Vec3 q_cam = pose.apply(view.points[i]);
    if (q_cam.z() <= 1e-9) {
      ++out.skipped;
      continue;
    }
    const Vec2 center = project(K, q_cam);

    // The stored 2D normal lives in the canonical view's image plane; lift
    // it to 3D there, rotate into the current camera, and project through
    // the pixel Jacobian to get the current image direction.
    const Vec3 n_cam = lift * Vec3(view.normals[i].x(), view.normals[i].y(), 0.0);
    Vec2 n_img = project_jacobian(K, q_cam) * n_cam;
    const double n_len = n_img.norm();
    if (n_len < 1e-12) {
      ++out.skipped;
      continue;
    }
    n_img /= n_len;

    CorrespondenceLine line;
    line.center = center;
    line.normal = n_img;
    line.scale = scale;
    line.length = length;
    line.n_max = n_img.lpNorm<Eigen::Infinity>();
    line.model_point = view.points[i];

    const Vec2 step = n_img / line.n_max;  // unit dominant-axis pixel step
    const int half = line.samples_per_side();
    const Vec2 lo = center - half * step, hi = center + half * step;
    const auto inside = [&](const Vec2& p) {
      return p.x() >= 0.0 && p.y() >= 0.0 && p.x() <= image.width - 1.0 &&
             p.y() <= image.height - 1.0;
    };
    if (!inside(lo) || !inside(hi)) {
      ++out.skipped;
      continue;
    }

    line.colors.reserve(2 * half + 1);
    line.confidences.reserve(2 * half + 1);
    for (int j = -half; j <= half; ++j) {
      const Vec2 p = center + j * step;
      const int x = static_cast<int>(std::lround(p.x()));
      const int y = static_cast<int>(std::lround(p.y()));
      line.colors.push_back(Color3u8(image.at(y, x, 0), image.at(y, x, 1),
                                     image.at(y, x, 2)));
      line.confidences.push_back(confidence.sample(p));
    }
    out.lines.push_back(std::move(line));
  }
  return out;
}

LinePosteriors line_posteriors(const CorrespondenceLine& line,
                               const ColorHistograms& hist) {
  LinePosteriors out;
  const std::size_t n = line.colors.size();
  out.fg.resize(n);
  out.bg.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 color = pixel_posterior(line.colors[j], hist);
    const Vec2 fused = fused_posterior(color, line.confidences[j]);
    out.fg[j] = fused[0];
    out.bg[j] = fused[1];
  }
  return out;
}

void collect_histogram_pixels(const CorrespondenceLine& line, double margin,
                              std::vector<Color3u8>& fg_pixels,
                              std::vector<Color3u8>& bg_pixels) {
  for (std::size_t j = 0; j < line.colors.size(); ++j) {
    const double r = line.coordinate(static_cast<int>(j));
    if (r <= -margin) fg_pixels.push_back(line.colors[j]);
    else if (r >= margin) bg_pixels.push_back(line.colors[j]);
  }
}

}  // namespace dcpose
