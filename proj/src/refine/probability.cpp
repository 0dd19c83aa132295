#include "dcpose/refine/probability.hpp"

#include <algorithm>
#include <cmath>

#include "dcpose/errors.hpp"

namespace dcpose {

namespace {

constexpr double kFactorFloor = 1e-300;
// Distribution means beyond kEdgeTrustStart of the half-span get linearly
// reduced step weight, reaching zero at kEdgeTrustEnd.
constexpr double kEdgeTrustStart = 0.7;
constexpr double kEdgeTrustEnd = 0.9;

// One Eq.-8 factor and its derivative with respect to d (pixels).
struct Factor {
  double value;
  double d_value;
};

Factor factor_at(double r_scaled, double d_scaled, double pf, double pb,
                 double slope, double dscale) {
  const double x = r_scaled - d_scaled;
  const double th = std::tanh(x / (2.0 * slope));
  // Both halves from th directly: tanh is odd, so mirrored inputs give
  // bitwise-mirrored factors (1.0 - hf would round differently in the tails).
  const double hf = 0.5 - 0.5 * th;
  const double hb = 0.5 + 0.5 * th;
  const double dhf_dx = -(1.0 - th * th) / (4.0 * slope);
  Factor f;
  f.value = std::max(hf * pf + hb * pb, kFactorFloor);
  // d(x)/d(d_px) = -dscale, and dhb = -dhf.
  f.d_value = dscale * dhf_dx * (pb - pf);
  return f;
}

// log sum exp with empty-safe guard.
double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

struct LineEvaluation {
  double log_lik = 0.0;   // log L(d), unnormalized
  double log_norm = 0.0;  // log Z over the sample domain
  double score = 0.0;     // d log L / dd, pixels
  double mean = 0.0;      // mean of the normalized distribution, px
  double variance = 1.0;  // variance of the normalized distribution, px^2
};

LineEvaluation evaluate_line(const CorrespondenceLine& line,
                             const LinePosteriors& post, double d_px,
                             const ProbabilityConfig& cfg, bool with_moments) {
  const int n = static_cast<int>(line.colors.size());
  const double dscale = line.n_max / line.scale;  // px -> scaled units
  LineEvaluation ev;

  const double d_scaled = d_px * dscale;
  for (int j = 0; j < n; ++j) {
    const Factor f = factor_at(line.coordinate(j), d_scaled, post.fg[j],
                               post.bg[j], cfg.slope, dscale);
    ev.log_lik += std::log(f.value);
    ev.score += f.d_value / f.value;
  }

  // Normalization and moments over the line's own sample positions. The
  // scaled offset between sample j and grid position k depends only on
  // j - k, so the step function is tabulated once per line.
  std::vector<double> th_diff(2 * n - 1);
  for (int m = -(n - 1); m <= n - 1; ++m)
    th_diff[m + n - 1] = std::tanh(static_cast<double>(m) / line.scale /
                                   (2.0 * cfg.slope));
  std::vector<double> grid_log(n);
  const int half = line.samples_per_side();
  constexpr double kRescale = 1e280;
  for (int k = 0; k < n; ++k) {
    double prod = 1.0;
    int shifts = 0;
    for (int j = 0; j < n; ++j) {
      const double th = th_diff[j - k + n - 1];
      const double hf = 0.5 - 0.5 * th, hb = 0.5 + 0.5 * th;
      prod *= std::max(hf * post.fg[j] + hb * post.bg[j], kFactorFloor);
      if (prod < 1.0 / kRescale) {
        prod *= kRescale;
        ++shifts;
      }
    }
    grid_log[k] = std::log(prod) - shifts * std::log(kRescale);
  }
  ev.log_norm = log_sum_exp(grid_log);

  if (with_moments) {
    double mean = 0.0, var = 0.0;
    for (int k = 0; k < n; ++k) {
      const double p = std::exp(grid_log[k] - ev.log_norm);
      const double dk_px = (k - half) / line.n_max;
      mean += p * dk_px;
      var += p * dk_px * dk_px;
    }
    var -= mean * mean;
    const double floor = 0.25 / (line.n_max * line.n_max);
    ev.mean = mean;
    ev.variance = std::max(var, floor);
  }
  return ev;
}

double line_weight(const CorrespondenceLine& line, const ProbabilityConfig& cfg) {
  const double s = static_cast<double>(line.scale);
  return cfg.slope * s * s / (cfg.sigma_r * cfg.sigma_r * line.n_max * line.n_max);
}

bool project_line_point(const Pose& pose, const CameraIntrinsics& K,
                        const CorrespondenceLine& line, Vec3& q_cam, Vec2& p) {
  q_cam = pose.apply(line.model_point);
  if (q_cam.z() <= 1e-9) return false;
  p = project(K, q_cam);
  return p.x() >= 0.0 && p.y() >= 0.0 && p.x() <= K.width - 1.0 &&
         p.y() <= K.height - 1.0;
}

}  // namespace

double smoothed_step_fg(double x, double slope) {
  return 0.5 - 0.5 * std::tanh(x / (2.0 * slope));
}

double smoothed_step_bg(double x, double slope) {
  return 1.0 - smoothed_step_fg(x, slope);
}

double contour_log_likelihood(const CorrespondenceLine& line,
                              const LinePosteriors& post, double d_px,
                              const ProbabilityConfig& cfg) {
  if (post.fg.size() != line.colors.size() || post.bg.size() != line.colors.size())
    throw ShapeMismatch("line posteriors do not match sample count");
  return evaluate_line(line, post, d_px, cfg, false).log_lik;
}

double contour_likelihood(const CorrespondenceLine& line,
                          const LinePosteriors& post, double d_px,
                          const ProbabilityConfig& cfg) {
  return std::exp(contour_log_likelihood(line, post, d_px, cfg));
}

double contour_distance(const Pose& pose, const CameraIntrinsics& K,
                        const CorrespondenceLine& line) {
  const Vec3 q_cam = pose.apply(line.model_point);
  const Vec2 p = project(K, q_cam);
  return line.normal.dot(p - line.center);
}

Vec6 contour_distance_jacobian(const Pose& pose, const CameraIntrinsics& K,
                               const CorrespondenceLine& line) {
  const Vec3 q_cam = pose.apply(line.model_point);
  const Eigen::Matrix<double, 2, 3> Jp = project_jacobian(K, q_cam);
  Vec6 J;
  J.head<3>() = (line.normal.transpose() * Jp * (-pose.R * skew(line.model_point)))
                    .transpose();
  J.tail<3>() = (line.normal.transpose() * Jp).transpose();
  return J;
}

double PoseProbability::normalized() const {
  if (valid_lines == 0) return 0.0;
  return std::exp(weighted_log_sum / valid_lines);
}

PoseProbability evaluate_pose_probability(
    const Pose& pose, const CameraIntrinsics& K,
    const std::vector<CorrespondenceLine>& lines,
    const std::vector<LinePosteriors>& posteriors, const ProbabilityConfig& cfg,
    bool with_derivatives) {
  if (lines.size() != posteriors.size())
    throw ShapeMismatch("one posterior set per line required");

  PoseProbability out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const CorrespondenceLine& line = lines[i];
    Vec3 q_cam;
    Vec2 p;
    if (!project_line_point(pose, K, line, q_cam, p)) {
      ++out.invalid_lines;
      continue;
    }
    const double d = line.normal.dot(p - line.center);
    const LineEvaluation ev =
        evaluate_line(line, posteriors[i], d, cfg, with_derivatives);
    const double w = line_weight(line, cfg);
    out.weighted_log_sum += w * (ev.log_lik - ev.log_norm);
    ++out.valid_lines;

    if (with_derivatives) {
      const Vec6 J = contour_distance_jacobian(pose, K, line);
      out.gradient += w * ev.score * J;
      // A line whose span contains no boundary piles its distribution mass
      // against a domain end; taper those off instead of trusting a mean
      // that really says "somewhere past the edge".
      const double half_span_px = line.samples_per_side() / line.n_max;
      const double edge = std::abs(ev.mean) / half_span_px;
      const double k = std::clamp((kEdgeTrustEnd - edge) /
                                      (kEdgeTrustEnd - kEdgeTrustStart),
                                  0.0, 1.0);
      const double residual = ev.mean - d;
      out.step_gradient += (k * w * residual / ev.variance) * J;
      out.curvature += (k * w / ev.variance) * (J * J.transpose());
    }
  }
  if (out.valid_lines == 0) throw NoValidLines("no line projects into the image");
  return out;
}

double pose_probability_value(const Pose& pose, const Vec6& theta,
                              const CameraIntrinsics& K,
                              const std::vector<CorrespondenceLine>& lines,
                              const std::vector<LinePosteriors>& posteriors,
                              const ProbabilityConfig& cfg) {
  return evaluate_pose_probability(perturb(pose, theta), K, lines, posteriors,
                                   cfg, false)
      .weighted_log_sum;
}

}  // namespace dcpose
