#pragma once

#include "dcpose/geom/mesh.hpp"
#include "dcpose/geom/pose.hpp"

namespace dcpose {

// Average distance between mesh vertices transformed by the two poses.
double add_metric(const Pose& estimate, const Pose& truth, const TriMesh& mesh);

// Standard pass rule: the average distance stays below frac * diameter.
bool add_pass(double add_value, double diameter, double frac = 0.1);

}  // namespace dcpose
