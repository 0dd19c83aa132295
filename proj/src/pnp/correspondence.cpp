#include "dcpose/pnp/correspondence.hpp"

#include <algorithm>

#include "dcpose/errors.hpp"
#include "dcpose/label/normalize.hpp"

namespace dcpose {

std::vector<Correspondence> extract_correspondences(
    const PredictionMaps& pred, const RoI& roi, const BBox3& bbox,
    double conf_thresh, double eps, int stride) {
  const int h = pred.coords.height, w = pred.coords.width;
  if (h == 0 || w == 0) throw EmptyInput("empty prediction maps");
  if (h != w) throw ShapeMismatch("prediction maps must be square");
  if (stride < 1) stride = 1;
  require_shape(pred.error, h, w, 1, "predicted error");
  require_shape(pred.confidence, h, w, 1, "predicted confidence");

  std::vector<Correspondence> out;
  for (int y = 0; y < h; y += stride) {
    for (int x = 0; x < w; x += stride) {
      if (pred.confidence.at(y, x) <= conf_thresh) continue;
      const double err = std::clamp(pred.error.at(y, x), 0.0, 1.0);
      if (err >= eps) continue;
      Correspondence c;
      c.pixel = roi.map_to_image(Vec2(x, y), w);
      c.model = denormalize_coords(
          Vec3(pred.coords.at(y, x, 0), pred.coords.at(y, x, 1),
               pred.coords.at(y, x, 2)),
          bbox);
      c.confidence = pred.confidence.at(y, x);
      c.error = err;
      out.push_back(c);
    }
  }
  return out;
}

double adaptive_eps(const PredictionMaps& pred, const RoI& roi,
                    const BBox3& bbox, double conf_thresh, int stride,
                    const ThresholdPolicy& policy) {
  if (policy.grid.empty()) throw EmptyInput("empty threshold grid");
  if (stride < 1) stride = 1;

  const int h = pred.coords.height, w = pred.coords.width;
  std::size_t confident = 0;
  for (int y = 0; y < h; y += stride) {
    for (int x = 0; x < w; x += stride) {
      if (pred.confidence.at(y, x) > conf_thresh) ++confident;
    }
  }
  const double need = std::max(static_cast<double>(policy.min_count),
                               policy.rho * static_cast<double>(confident));

  double best = *std::max_element(policy.grid.begin(), policy.grid.end());
  for (const double eps : policy.grid) {
    const auto n =
        extract_correspondences(pred, roi, bbox, conf_thresh, eps, stride)
            .size();
    if (static_cast<double>(n) >= need && eps < best) best = eps;
  }
  return best;
}

}  // namespace dcpose
