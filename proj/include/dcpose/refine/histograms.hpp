#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dcpose/types.hpp"

namespace dcpose {

// Foreground/background color models as normalized RGB histograms with
// `bins` cells per channel (bins^3 cells total). The first update adopts the
// observed distribution; later updates blend with `learning_rate`.
struct ColorHistograms {
  explicit ColorHistograms(int bins = 16, double learning_rate = 0.2);

  int bins = 16;
  double learning_rate = 0.2;
  bool initialized = false;
  Eigen::VectorXd fg;  // sums to 1 once initialized
  Eigen::VectorXd bg;

  int cell_of(const Color3u8& color) const;

  // p(color | fg) and p(color | bg); zero before the first update.
  double fg_likelihood(const Color3u8& color) const;
  double bg_likelihood(const Color3u8& color) const;

  // Blends normalized histograms of the given pixel sets into the model.
  // An empty set leaves its side unchanged.
  void update(const std::vector<Color3u8>& fg_pixels,
              const std::vector<Color3u8>& bg_pixels);
};

// Color-based posterior p(fg | color), p(bg | color) by likelihood ratio.
// Returns (0.5, 0.5) when both likelihoods are zero.
Vec2 pixel_posterior(const Color3u8& color, const ColorHistograms& hist);

// Averages the color posterior with a learned foreground confidence:
// p_f = (color_fg + conf) / 2, p_b = (color_bg + (1 - conf)) / 2.
// p_f + p_b == 1 whenever the color posterior sums to 1.
Vec2 fused_posterior(const Vec2& color_posterior, double learned_confidence);

}  // namespace dcpose
