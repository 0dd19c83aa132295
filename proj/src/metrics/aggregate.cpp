#include "dcpose/metrics/aggregate.hpp"

#include <algorithm>

#include "dcpose/errors.hpp"
#include "dcpose/metrics/add.hpp"

namespace dcpose {

double median(std::vector<double> values) {
  if (values.empty()) throw EmptyInput("median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::map<std::string, SplitSummary> aggregate(
    const std::vector<SceneResult>& results) {
  if (results.empty()) throw EmptyInput("no scene results");
  std::map<std::string, SplitSummary> out;
  std::map<std::string, std::vector<double>> combined;
  for (const auto& r : results) {
    SplitSummary& s = out[r.split];
    ++s.scenes;
    if (!r.ok) {
      ++s.failures;
      continue;
    }
    s.mean_translation += r.error.translation;
    s.mean_rotation += r.error.rotation;
    s.mean_combined += r.error.combined;
    s.mean_add += r.add;
    combined[r.split].push_back(r.error.combined);
  }
  for (auto& [split, s] : out) {
    const auto n = static_cast<double>(s.scenes - s.failures);
    if (n > 0) {
      s.mean_translation /= n;
      s.mean_rotation /= n;
      s.mean_combined /= n;
      s.mean_add /= n;
      s.median_combined = median(combined[split]);
    }
  }
  return out;
}

std::vector<double> add_recall_curve(const std::vector<double>& add_values,
                                     double diameter,
                                     const std::vector<double>& fracs) {
  if (add_values.empty() || fracs.empty()) {
    throw EmptyInput("empty recall inputs");
  }
  std::vector<double> recall;
  recall.reserve(fracs.size());
  for (const double f : fracs) {
    std::size_t pass = 0;
    for (const double v : add_values) {
      if (add_pass(v, diameter, f)) ++pass;
    }
    recall.push_back(static_cast<double>(pass) /
                     static_cast<double>(add_values.size()));
  }
  return recall;
}

}  // namespace dcpose
