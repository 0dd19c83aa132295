#pragma once

#include <vector>

#include "dcpose/geom/camera.hpp"
#include "dcpose/types.hpp"

namespace dcpose {

// Linear n-point pose (n >= 4) through four control points. Returns false
// on degenerate configurations (near-planar point sets, rank-deficient
// systems); the caller keeps its previous estimate in that case.
bool solve_epnp(const std::vector<Vec3>& model, const std::vector<Vec2>& pixels,
                const CameraIntrinsics& K, Pose& out);

}  // namespace dcpose
