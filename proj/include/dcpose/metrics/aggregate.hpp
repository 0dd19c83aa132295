#pragma once

#include <map>
#include <string>
#include <vector>

#include "dcpose/metrics/pose_error.hpp"

namespace dcpose {

struct SceneResult {
  std::string split;  // grouping key, e.g. object or sequence name
  PoseError error;
  double add = 0.0;
  bool ok = true;  // false when the pipeline failed on the scene
};

struct SplitSummary {
  std::size_t scenes = 0;
  std::size_t failures = 0;
  double mean_translation = 0.0;
  double mean_rotation = 0.0;
  double mean_combined = 0.0;
  double median_combined = 0.0;
  double mean_add = 0.0;
};

// Median with the even-count average convention. Throws EmptyInput.
double median(std::vector<double> values);

// Per-split summaries over the ok scenes; failures only counted. Throws
// EmptyInput when no results are given.
std::map<std::string, SplitSummary> aggregate(
    const std::vector<SceneResult>& results);

// Fraction of values below frac * diameter, one entry per threshold
// fraction; nondecreasing when fracs ascend. Throws EmptyInput.
std::vector<double> add_recall_curve(const std::vector<double>& add_values,
                                     double diameter,
                                     const std::vector<double>& fracs);

}  // namespace dcpose
