#include "dcpose/label/corrupt.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dcpose/errors.hpp"
#include "dcpose/label/losses.hpp"
#include "dcpose/types.hpp"

namespace dcpose {

PredictionMaps corrupt(const LabelMaps& labels, const NoiseConfig& cfg,
                       std::uint64_t seed) {
  const int h = labels.mask.height, w = labels.mask.width;
  if (h == 0 || w == 0) throw EmptyInput("empty label maps");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  PredictionMaps pred;
  pred.coords = labels.coords;

  // One draw order, row-major over foreground pixels, keeps the stream
  // layout independent of the config flags that follow.
  if (cfg.sigma_coord > 0.0) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!labels.mask.at(y, x)) continue;
        for (int c = 0; c < 3; ++c) {
          double v = pred.coords.at(y, x, c) + cfg.sigma_coord * gauss(rng);
          pred.coords.at(y, x, c) = std::clamp(v, 0.0, 1.0);
        }
      }
    }
  }

  if (cfg.blob_count > 0) {
    std::vector<std::pair<int, int>> fg;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (labels.mask.at(y, x)) fg.emplace_back(y, x);
      }
    }
    if (!fg.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, fg.size() - 1);
      std::uniform_real_distribution<double> radius(cfg.blob_radius_min,
                                                    cfg.blob_radius_max);
      for (int b = 0; b < cfg.blob_count; ++b) {
        const auto [cy, cx] = fg[pick(rng)];
        const double r = radius(rng);
        const Vec3 value(unif(rng), unif(rng), unif(rng));
        const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
        const int y1 = std::min(h - 1, static_cast<int>(std::ceil(cy + r)));
        const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
        const int x1 = std::min(w - 1, static_cast<int>(std::ceil(cx + r)));
        for (int y = y0; y <= y1; ++y) {
          for (int x = x0; x <= x1; ++x) {
            const double dy = y - cy, dx = x - cx;
            if (dy * dy + dx * dx > r * r) continue;
            if (!labels.mask.at(y, x)) continue;
            for (int c = 0; c < 3; ++c) pred.coords.at(y, x, c) = value[c];
          }
        }
      }
    }
  }

  pred.confidence = Image<double>(h, w, 1, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double n = std::abs(cfg.sigma_conf * gauss(rng));
      const double c = labels.mask.at(y, x) ? 1.0 - n : n;
      pred.confidence.at(y, x) = std::clamp(c, 0.0, 1.0);
    }
  }
  if (cfg.flip_rate > 0.0) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (unif(rng) < cfg.flip_rate) {
          pred.confidence.at(y, x) = 1.0 - pred.confidence.at(y, x);
        }
      }
    }
  }

  pred.error = error_map(pred.coords, labels);
  if (cfg.error_channel == NoiseConfig::ErrorChannel::noisy &&
      cfg.sigma_error > 0.0) {
    for (double& e : pred.error.data) {
      e = std::max(0.0, e + cfg.sigma_error * gauss(rng));
    }
  }

  if (cfg.region_scores) {
    int count = cfg.region_count;
    if (count <= 0) {
      std::int32_t max_id = -1;
      for (const auto r : labels.regions.data) max_id = std::max(max_id, r);
      count = max_id + 1;
    }
    if (count <= 0) throw EmptyInput("labels carry no region ids");
    pred.region_scores = Image<double>(h, w, count, 0.0);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::int32_t r = labels.regions.at(y, x);
        if (r >= 0 && r < count) pred.region_scores.at(y, x, r) = 1.0;
      }
    }
  }
  return pred;
}

}  // namespace dcpose
