#include "dcpose/label/losses.hpp"

#include <algorithm>
#include <cmath>

#include "dcpose/errors.hpp"

namespace dcpose {

Image<double> error_map(const Image<double>& pred_coords,
                        const LabelMaps& labels) {
  const int h = labels.mask.height, w = labels.mask.width;
  require_shape(pred_coords, h, w, 3, "predicted coords");
  require_shape(labels.coords, h, w, 3, "label coords");
  Image<double> err(h, w, 1, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!labels.mask.at(y, x)) continue;
      double e = 0.0;
      for (int c = 0; c < 3; ++c) {
        e += std::abs(pred_coords.at(y, x, c) - labels.coords.at(y, x, c));
      }
      err.at(y, x) = e;
    }
  }
  return err;
}

LossBreakdown compute_losses(const PredictionMaps& pred,
                             const LabelMaps& labels, const LossWeights& w) {
  const int h = labels.mask.height, wd = labels.mask.width;
  require_shape(pred.coords, h, wd, 3, "predicted coords");
  require_shape(pred.error, h, wd, 1, "predicted error");
  require_shape(pred.confidence, h, wd, 1, "predicted confidence");
  if (h == 0 || wd == 0) throw EmptyInput("empty maps");

  LossBreakdown out;
  const Image<double> oracle_err = error_map(pred.coords, labels);

  std::size_t fg = 0;
  double coord_sum = 0.0, conf_sum = 0.0, err_sum = 0.0, region_sum = 0.0;
  const bool has_regions = !pred.region_scores.empty();
  if (has_regions) {
    if (pred.region_scores.height != h || pred.region_scores.width != wd) {
      throw ShapeMismatch("region scores have wrong shape");
    }
  }

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < wd; ++x) {
      const bool m = labels.mask.at(y, x) != 0;
      if (m) {
        ++fg;
        coord_sum += oracle_err.at(y, x);
        if (has_regions) {
          const std::int32_t r = labels.regions.at(y, x);
          if (r < 0 || r >= pred.region_scores.channels) {
            throw ShapeMismatch("region id outside score channels");
          }
          const double s = std::max(pred.region_scores.at(y, x, r), 1e-7);
          region_sum += -std::log(s);
        }
      }
      const double p =
          std::clamp(pred.confidence.at(y, x), 1e-7, 1.0 - 1e-7);
      conf_sum += m ? -std::log(p) : -std::log(1.0 - p);
      const double de = pred.error.at(y, x) - oracle_err.at(y, x);
      err_sum += de * de;
    }
  }

  const auto total_px = static_cast<double>(h) * wd;
  out.coord = fg > 0 ? coord_sum / static_cast<double>(fg) : 0.0;
  out.conf = conf_sum / total_px;
  out.error = std::min(err_sum / total_px, 1.0);
  out.region = (has_regions && fg > 0)
                   ? region_sum / static_cast<double>(fg)
                   : 0.0;
  out.total = w.alpha * out.coord + w.beta * out.conf + w.gamma * out.error +
              w.delta * out.region;
  return out;
}

}  // namespace dcpose
