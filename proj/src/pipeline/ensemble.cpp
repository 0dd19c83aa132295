#include "dcpose/pipeline/ensemble.hpp"

namespace dcpose {

namespace {

// De-rotates every channel of one prediction set back into the unrotated
// crop frame. region_scores may legitimately be empty.
PredictionMaps derotate(const PredictionMaps& maps, int quarter_turns) {
  PredictionMaps out;
  out.coords = rotate_quarters(maps.coords, -quarter_turns);
  out.error = rotate_quarters(maps.error, -quarter_turns);
  out.confidence = rotate_quarters(maps.confidence, -quarter_turns);
  if (!maps.region_scores.empty())
    out.region_scores = rotate_quarters(maps.region_scores, -quarter_turns);
  return out;
}

}  // namespace

PredictionSets rotation_ensemble(CorrespondenceSource& source, const RoI& roi,
                                 bool ensemble) {
  const int rotations = ensemble ? 4 : 1;

  PredictionSets sets;
  sets.per_rotation.reserve(rotations);
  for (int q = 0; q < rotations; ++q) {
    PredictionMaps maps;
    try {
      maps = source.predict(roi, q);
    } catch (const Error& e) {
      throw SourceFailure(e.what());
    }
    sets.per_rotation.push_back(derotate(maps, q));
  }

  const Image<double>& first = sets.per_rotation.front().confidence;
  sets.averaged_confidence =
      Image<float>(first.height, first.width, 1, 0.0f);
  for (const PredictionMaps& maps : sets.per_rotation) {
    if (!maps.confidence.same_shape(first))
      throw ShapeMismatch("confidence shapes differ across rotations");
    for (std::size_t i = 0; i < maps.confidence.data.size(); ++i)
      sets.averaged_confidence.data[i] +=
          static_cast<float>(maps.confidence.data[i]);
  }
  for (float& v : sets.averaged_confidence.data)
    v /= static_cast<float>(rotations);
  return sets;
}

}  // namespace dcpose
