#include "dcpose/metrics/add.hpp"

#include "dcpose/errors.hpp"

namespace dcpose {

double add_metric(const Pose& estimate, const Pose& truth,
                  const TriMesh& mesh) {
  if (mesh.vertices.empty()) throw EmptyInput("mesh has no vertices");
  double sum = 0.0;
  for (const auto& v : mesh.vertices) {
    sum += (estimate.apply(v) - truth.apply(v)).norm();
  }
  return sum / static_cast<double>(mesh.vertices.size());
}

bool add_pass(double add_value, double diameter, double frac) {
  return add_value < frac * diameter;
}

}  // namespace dcpose
