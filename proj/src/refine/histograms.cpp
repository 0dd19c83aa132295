#include "dcpose/refine/histograms.hpp"

#include "dcpose/errors.hpp"

namespace dcpose {

ColorHistograms::ColorHistograms(int bins_, double learning_rate_)
    : bins(bins_), learning_rate(learning_rate_) {
  if (bins < 1 || bins > 256) throw EmptyInput("histogram bins must be in [1, 256]");
  const int cells = bins * bins * bins;
  fg = Eigen::VectorXd::Zero(cells);
  bg = Eigen::VectorXd::Zero(cells);
}

int ColorHistograms::cell_of(const Color3u8& color) const {
  const int r = (static_cast<int>(color[0]) * bins) >> 8;
  const int g = (static_cast<int>(color[1]) * bins) >> 8;
  const int b = (static_cast<int>(color[2]) * bins) >> 8;
  return (r * bins + g) * bins + b;
}

double ColorHistograms::fg_likelihood(const Color3u8& color) const {
  return fg[cell_of(color)];
}

double ColorHistograms::bg_likelihood(const Color3u8& color) const {
  return bg[cell_of(color)];
}

namespace {

Eigen::VectorXd normalized_counts(const std::vector<Color3u8>& pixels,
                                  const ColorHistograms& hist) {
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(hist.fg.size());
  for (const Color3u8& c : pixels) counts[hist.cell_of(c)] += 1.0;
  counts /= static_cast<double>(pixels.size());
  return counts;
}

}  // namespace

void ColorHistograms::update(const std::vector<Color3u8>& fg_pixels,
                             const std::vector<Color3u8>& bg_pixels) {
  const double a = initialized ? learning_rate : 1.0;
  if (!fg_pixels.empty()) {
    fg = (1.0 - a) * fg + a * normalized_counts(fg_pixels, *this);
    const double s = fg.sum();
    if (s > 0.0) fg /= s;
  }
  if (!bg_pixels.empty()) {
    bg = (1.0 - a) * bg + a * normalized_counts(bg_pixels, *this);
    const double s = bg.sum();
    if (s > 0.0) bg /= s;
  }
  if (!fg_pixels.empty() || !bg_pixels.empty()) initialized = true;
}

Vec2 pixel_posterior(const Color3u8& color, const ColorHistograms& hist) {
  const double f = hist.fg_likelihood(color);
  const double b = hist.bg_likelihood(color);
  const double sum = f + b;
  if (sum <= 0.0) return Vec2(0.5, 0.5);
  return Vec2(f / sum, b / sum);
}

Vec2 fused_posterior(const Vec2& color_posterior, double learned_confidence) {
  return Vec2(0.5 * (color_posterior[0] + learned_confidence),
              0.5 * (color_posterior[1] + (1.0 - learned_confidence)));
}

}  // namespace dcpose
