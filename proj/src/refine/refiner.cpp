#include "dcpose/refine/refiner.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "dcpose/errors.hpp"

namespace dcpose {

namespace {

void check_in_frame(const Pose& pose, const Vec3& center,
                    const CameraIntrinsics& K) {
  if (!pose.t.allFinite() || !pose.R.allFinite())
    throw DivergedPose("pose became non-finite");
  const Vec3 c_cam = pose.apply(center);
  if (c_cam.z() <= 1e-9) throw DivergedPose("object center behind the camera");
  const Vec2 p = project(K, c_cam);
  if (p.x() < -K.width || p.x() > 2.0 * K.width || p.y() < -K.height ||
      p.y() > 2.0 * K.height)
    throw DivergedPose("object center left the frame");
}

}  // namespace

RefineResult refine(const Pose& init, const Image<std::uint8_t>& image,
                    const CameraIntrinsics& K, const LearnedConfidence& confidence,
                    const TriMesh& mesh, const SparseViewpointModel& svm,
                    const RefinerConfig& config, ColorHistograms& histograms) {
  const Vec3 center = mesh.centroid();
  const ProbabilityConfig prob_cfg = config.probability();

  RefineResult result;
  result.pose = init;
  check_in_frame(result.pose, center, K);

  Mat6 tikhonov = Mat6::Zero();
  tikhonov.diagonal().head<3>().setConstant(config.tikhonov_rotation);
  tikhonov.diagonal().tail<3>().setConstant(config.tikhonov_translation);

  std::vector<Color3u8> fg_pixels, bg_pixels;

  for (int scale : config.scales) {
    for (int it = 0; it < config.iterations_per_scale; ++it) {
      if (!histograms.initialized) {
        // Bootstrap the color model from the angular-nearest view; selection
        // needs posteriors, which need histograms. The first update is
        // adopted wholesale and the initial pose is the least trustworthy,
        // so demand double the usual clearance from the predicted contour.
        const SilhouetteView& view = svm.views[nearest_view(svm, result.pose)];
        const LineBuildResult boot = build_lines(result.pose, K, view, image,
                                                 confidence, scale,
                                                 config.line_length);
        if (boot.lines.empty())
          throw NoValidLines("no usable correspondence line");
        fg_pixels.clear();
        bg_pixels.clear();
        for (const CorrespondenceLine& line : boot.lines)
          collect_histogram_pixels(line, 2.0 * config.histogram_margin,
                                   fg_pixels, bg_pixels);
        histograms.update(fg_pixels, bg_pixels);
      }

      const int k = scale <= config.view_select_max_scale
                        ? config.view_candidates
                        : 1;
      ViewSelection sel =
          select_view(svm, result.pose, K, image, confidence, scale,
                      config.line_length, histograms, prob_cfg, k);
      if (sel.view < 0) throw NoValidLines("no usable correspondence line");

      fg_pixels.clear();
      bg_pixels.clear();
      for (const CorrespondenceLine& line : sel.built.lines)
        collect_histogram_pixels(line, config.histogram_margin, fg_pixels,
                                 bg_pixels);
      histograms.update(fg_pixels, bg_pixels);

      std::vector<LinePosteriors> posteriors;
      posteriors.reserve(sel.built.lines.size());
      for (const CorrespondenceLine& line : sel.built.lines)
        posteriors.push_back(line_posteriors(line, histograms));

      const PoseProbability eval = evaluate_pose_probability(
          result.pose, K, sel.built.lines, posteriors, prob_cfg, true);
      Vec6 delta = (eval.curvature + tikhonov).ldlt().solve(eval.step_gradient);
      if (!delta.allFinite()) throw DivergedPose("non-finite update step");
      // Trust region: scale the whole step down if either block is too large.
      double shrink = 1.0;
      const double rot = delta.head<3>().norm(), tra = delta.tail<3>().norm();
      if (rot > config.max_step_rotation)
        shrink = config.max_step_rotation / rot;
      if (tra > config.max_step_translation)
        shrink = std::min(shrink, config.max_step_translation / tra);
      delta *= shrink;
      result.pose = perturb(result.pose, delta);
      check_in_frame(result.pose, center, K);
      ++result.iterations;
    }
  }

  // Score the final pose with freshly built lines at the finest scale.
  const int final_scale = config.scales.empty() ? 1 : config.scales.back();
  const ViewSelection sel =
      select_view(svm, result.pose, K, image, confidence, final_scale,
                  config.line_length, histograms, prob_cfg,
                  config.view_candidates);
  if (sel.view < 0) throw NoValidLines("no usable correspondence line");
  result.probability = sel.probability;
  return result;
}

ViewSelection select_view(const SparseViewpointModel& svm, const Pose& pose,
                          const CameraIntrinsics& K,
                          const Image<std::uint8_t>& image,
                          const LearnedConfidence& confidence, int scale,
                          int line_length, const ColorHistograms& histograms,
                          const ProbabilityConfig& prob_cfg, int k) {
  ViewSelection best;
  for (int vi : nearest_views(svm, pose, k)) {
    LineBuildResult built = build_lines(pose, K, svm.views[vi], image,
                                        confidence, scale, line_length);
    if (built.lines.empty()) continue;
    std::vector<LinePosteriors> posts;
    posts.reserve(built.lines.size());
    for (const CorrespondenceLine& line : built.lines)
      posts.push_back(line_posteriors(line, histograms));
    const double p =
        evaluate_pose_probability(pose, K, built.lines, posts, prob_cfg, false)
            .normalized();
    if (best.view < 0 || p > best.probability) {
      best.view = vi;
      best.built = std::move(built);
      best.posteriors = std::move(posts);
      best.probability = p;
    }
  }
  return best;
}

}  // namespace dcpose
