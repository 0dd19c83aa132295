#include "dcpose/pipeline/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "dcpose/label/rasterizer.hpp"
#include "dcpose/refine/lines.hpp"
#include "dcpose/refine/sparse_viewpoint.hpp"

namespace dcpose {

namespace {

// Deterministic tie-break shared by every selection rule.
bool earlier(const Hypothesis& a, const Hypothesis& b) {
  if (a.eps != b.eps) return a.eps < b.eps;
  return a.quarter_turns < b.quarter_turns;
}

// Ranking without refinement: consensus size, then reprojection error.
bool better_unrefined(const Hypothesis& a, const Hypothesis& b) {
  if (a.initial.inliers.size() != b.initial.inliers.size())
    return a.initial.inliers.size() > b.initial.inliers.size();
  if (a.initial.mean_reproj_px != b.initial.mean_reproj_px)
    return a.initial.mean_reproj_px < b.initial.mean_reproj_px;
  return earlier(a, b);
}

bool better_refined(const Hypothesis& a, const Hypothesis& b) {
  if (a.probability != b.probability) return a.probability > b.probability;
  return earlier(a, b);
}

// One color model per image, bootstrapped at the most trustworthy initial
// pose (the unrefined-ranking winner). Each refinement then works on its own
// copy, so hypotheses stay independent work items and their probabilities
// are compared under a common model basis. Returns an uninitialized model
// when no usable line exists at the seed pose; refinement then bootstraps
// per hypothesis as a fallback.
ColorHistograms image_color_model(const std::vector<Hypothesis>& hypotheses,
                                  const Image<std::uint8_t>& image,
                                  const CameraIntrinsics& K,
                                  const LearnedConfidence& confidence,
                                  const SparseViewpointModel& svm,
                                  const RefinerConfig& cfg) {
  ColorHistograms hist(cfg.histogram_bins, cfg.histogram_learning_rate);
  const Hypothesis* seed = nullptr;
  for (const Hypothesis& h : hypotheses) {
    if (h.status != Hypothesis::Status::ok) continue;
    if (!seed || better_unrefined(h, *seed)) seed = &h;
  }
  if (!seed) return hist;

  const int scale = cfg.scales.empty() ? 1 : cfg.scales.front();
  try {
    const SilhouetteView& view =
        svm.views[nearest_view(svm, seed->initial.pose)];
    const LineBuildResult boot =
        build_lines(seed->initial.pose, K, view, image, confidence, scale,
                    cfg.line_length);
    std::vector<Color3u8> fg, bg;
    for (const CorrespondenceLine& line : boot.lines)
      collect_histogram_pixels(line, 2.0 * cfg.histogram_margin, fg, bg);
    if (!fg.empty() && !bg.empty()) hist.update(fg, bg);
  } catch (const Error&) {
    // Leave the model uninitialized.
  }
  return hist;
}

}  // namespace

std::vector<Hypothesis> generate(const PredictionSets& sets, const RoI& roi,
                                 const CameraIntrinsics& K, const BBox3& bbox,
                                 const GenerateConfig& cfg) {
  if (sets.per_rotation.empty()) throw NoHypotheses("no prediction maps");

  std::vector<Hypothesis> hypotheses;
  int pair_index = 0;
  int ok = 0;
  for (int q = 0; q < static_cast<int>(sets.per_rotation.size()); ++q) {
    const PredictionMaps& maps = sets.per_rotation[q];

    std::vector<double> thresholds;
    switch (cfg.policy.mode) {
      case ThresholdPolicy::Mode::grid:
        thresholds = cfg.policy.grid;
        break;
      case ThresholdPolicy::Mode::fixed:
        thresholds = {cfg.policy.fixed_eps};
        break;
      case ThresholdPolicy::Mode::adaptive:
        thresholds = {adaptive_eps(maps, roi, bbox, cfg.conf_thresh,
                                   cfg.stride, cfg.policy)};
        break;
    }

    for (double eps : thresholds) {
      Hypothesis h;
      h.eps = eps;
      h.quarter_turns = q;
      RansacParams params = cfg.ransac;
      // A distinct RANSAC stream per (rotation, threshold) pair, fixed by
      // the pair's position, so results do not depend on evaluation order.
      params.seed = cfg.ransac.seed +
                    0x9e3779b97f4a7c15ull *
                        static_cast<std::uint64_t>(pair_index + 1);
      ++pair_index;
      try {
        const std::vector<Correspondence> corr = extract_correspondences(
            maps, roi, bbox, cfg.conf_thresh, eps, cfg.stride);
        h.initial = solve_pnp(corr, K, params);
        h.refined = h.initial.pose;
        ++ok;
      } catch (const Error&) {
        h.status = Hypothesis::Status::pnp_failed;
      }
      hypotheses.push_back(std::move(h));
    }
  }
  if (ok == 0)
    throw NoHypotheses("every rotation/threshold combination failed");
  return hypotheses;
}

Selection select(std::vector<Hypothesis> hypotheses,
                 const Image<std::uint8_t>& image, const CameraIntrinsics& K,
                 const PredictionSets& sets, const RoI& roi,
                 const TriMesh& mesh, const SparseViewpointModel& svm,
                 const SelectConfig& cfg) {
  const LearnedConfidence confidence{&sets.averaged_confidence, roi};

  if (cfg.refine) {
    const ColorHistograms shared =
        image_color_model(hypotheses, image, K, confidence, svm, cfg.refiner);

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < hypotheses.size(); ++i)
      if (hypotheses[i].status == Hypothesis::Status::ok) todo.push_back(i);

    const int jobs = std::clamp(cfg.jobs, 1,
                                std::max<int>(1, static_cast<int>(todo.size())));
    auto work = [&](int t) {
      for (std::size_t j = t; j < todo.size(); j += jobs) {
        Hypothesis& h = hypotheses[todo[j]];
        ColorHistograms hist = shared;
        try {
          const RefineResult r = refine(h.initial.pose, image, K, confidence,
                                        mesh, svm, cfg.refiner, hist);
          h.refined = r.pose;
          h.probability = r.probability;
        } catch (const Error&) {
          h.status = Hypothesis::Status::refine_failed;
        }
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(jobs);
      for (int t = 0; t < jobs; ++t) threads.emplace_back(work, t);
      for (std::thread& t : threads) t.join();
    }
  }

  const Hypothesis* best = nullptr;
  for (const Hypothesis& h : hypotheses) {
    if (h.status != Hypothesis::Status::ok) continue;
    if (!best || (cfg.refine ? better_refined(h, *best)
                             : better_unrefined(h, *best)))
      best = &h;
  }
  if (!best) throw AllHypothesesFailed("no hypothesis survived");

  Selection sel;
  sel.best = *best;
  sel.hypotheses = std::move(hypotheses);
  return sel;
}

RoI refine_roi(const PredictionMaps& maps, const TriMesh& mesh,
               const Pose& pose, const CameraIntrinsics& K, const RoI& input,
               double std_thresh) {
  if (!maps.error.same_shape(maps.confidence))
    throw ShapeMismatch("error and confidence maps disagree");

  double sum = 0.0, sum_sq = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < maps.confidence.data.size(); ++i) {
    if (maps.confidence.data[i] <= 0.5) continue;
    const double e = maps.error.data[i];
    sum += e;
    sum_sq += e * e;
    ++n;
  }
  if (n == 0) return input;
  const double mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
  if (std::sqrt(var) >= std_thresh) return input;

  Image<std::uint8_t> mask;
  Image<double> depth;
  rasterize_mask(mesh, pose, K, mask, depth);
  int min_x = K.width, max_x = -1, min_y = K.height, max_y = -1;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(y, x)) continue;
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
  if (max_x < 0) return input;

  const double w = max_x - min_x + 1;
  const double h = max_y - min_y + 1;
  RoI out;
  out.center = Vec2((min_x + max_x) / 2.0, (min_y + max_y) / 2.0);
  out.side = 1.1 * std::max(w, h);
  out.source = RoISource::refined;
  return out;
}

EstimateResult estimate(CorrespondenceSource& source,
                        const Image<std::uint8_t>& image,
                        const CameraIntrinsics& K, const RoI& roi,
                        const TriMesh& mesh, const BBox3& bbox,
                        const SparseViewpointModel& svm,
                        const EstimateConfig& cfg) {
  RoI current = roi;
  PredictionSets sets = rotation_ensemble(source, current, cfg.ensemble);
  Selection sel = select(generate(sets, current, K, bbox, cfg.generate), image,
                         K, sets, current, mesh, svm, cfg.select);

  if (cfg.roi_refinement) {
    const RoI updated = refine_roi(sets.per_rotation.front(), mesh,
                                   sel.best.refined, K, current,
                                   cfg.std_thresh);
    const bool changed = updated.source != current.source ||
                         updated.side != current.side ||
                         updated.center.x() != current.center.x() ||
                         updated.center.y() != current.center.y();
    if (changed) {
      current = updated;
      sets = rotation_ensemble(source, current, cfg.ensemble);
      sel = select(generate(sets, current, K, bbox, cfg.generate), image, K,
                   sets, current, mesh, svm, cfg.select);
    }
  }

  EstimateResult result;
  result.best = sel.best;
  result.hypotheses = std::move(sel.hypotheses);
  result.roi = current;
  return result;
}

}  // namespace dcpose
